// Copyright 2026 the aqr developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace aqr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace aqr
