# Copyright 2026 the aqr developers
# SPDX-License-Identifier: Apache-2.0
"""Smoke tests of the python bindings against known values."""

import math

import pytest

import aqr


def test_ensemble_and_model():
    ens = aqr.make_mpsk_ensemble(4, 1.0)
    assert len(ens) == 4
    assert ens.amplitudes[0] == pytest.approx(1j)
    assert ens.amplitudes[3] == pytest.approx(1.0)
    assert sum(ens.priors) == pytest.approx(1.0)

    with pytest.raises(ValueError):
        aqr.make_mpsk_ensemble(1, 1.0)

    model = aqr.SystemModel(0.7, 0.996, 0.001, 10)
    assert model.slices == 10
    assert aqr.SystemModel.ideal(5).efficiency == 1.0


def test_photodetection():
    assert aqr.displaced_mean(1.0, 1.0, 1.0) == 0.0
    assert aqr.displaced_mean(-1.0, 1.0, 1.0) == pytest.approx(4.0)
    model = aqr.SystemModel.ideal(1)
    assert aqr.click_probability(1.0, model) == pytest.approx(1 - math.exp(-1))
    assert aqr.photon_count_pmf(1.0, 1) == pytest.approx(math.exp(-1))

    ens = aqr.make_mpsk_ensemble(4, 1.0)
    post = aqr.bayes_update(aqr.BeliefState.uniform(4), ens.amplitudes[0], False, ens, model)
    assert post.probs[0] == pytest.approx(1 / (1 + 2 * math.exp(-2) + math.exp(-4)))

    with pytest.raises(RuntimeError):
        vac = aqr.make_mpsk_ensemble(4, 0.0)
        aqr.bayes_update(aqr.BeliefState.uniform(4), 0j, True, vac, model)


def test_exact_evaluation():
    ens = aqr.make_mpsk_ensemble(4, 1.0)
    model = aqr.SystemModel.ideal(1)
    report = aqr.evaluate_strategy(aqr.non_optimized_strategy(1), ens, model)
    assert report.p_error == pytest.approx((2 + math.exp(-4)) / 4)

    vac = aqr.make_mpsk_ensemble(4, 0.0)
    model10 = aqr.SystemModel.ideal(10)
    assert aqr.evaluate_strategy(
        aqr.non_optimized_strategy(10), vac, model10
    ).p_error == pytest.approx(0.75)

    rows = aqr.induced_channel(aqr.non_optimized_strategy(10), ens, model10)
    for row in rows:
        assert sum(row) == pytest.approx(1.0)


def test_optimizers_nest():
    ens = aqr.make_mpsk_ensemble(4, 1.0)
    model = aqr.SystemModel.ideal(4)
    non_opt = aqr.evaluate_strategy(aqr.non_optimized_strategy(4), ens, model).p_error
    flat = aqr.optimize_flat(ens, model)
    seq = aqr.optimize_sequential(ens, model, seed=flat.strategy)
    hist = aqr.optimize_historical(ens, model, seed=seq.strategy)
    assert flat.p_error <= non_opt + 1e-9
    assert seq.p_error <= flat.p_error + 1e-9
    assert hist.p_error <= seq.p_error + 1e-9
    assert hist.p_error >= aqr.helstrom_mpsk(4, 1.0) - 1e-9


def test_bounds():
    assert aqr.qnl_heterodyne(4, 0.0) == pytest.approx(0.75, abs=1e-9)
    assert aqr.helstrom_mpsk(2, 1.0) == pytest.approx(
        (1 - math.sqrt(1 - math.exp(-4))) / 2
    )
    assert aqr.holevo_bound(1.0) == pytest.approx(2.0)
    assert aqr.heterodyne_capacity(3.0) == pytest.approx(2.0)


def test_monte_carlo_determinism():
    ens = aqr.make_mpsk_ensemble(4, 0.5)
    model = aqr.SystemModel.ideal(5)
    strat = aqr.flat_strategy(5, 1.5)
    a = aqr.simulate_trials(strat, ens, model, 20000, 11, 1)
    b = aqr.simulate_trials(strat, ens, model, 20000, 11, 2)
    assert a.errors == b.errors
    assert a.confusion == b.confusion
    assert a.p_hat == pytest.approx(a.errors / a.trials)


def test_mutual_information_and_schedules(tmp_path):
    identity = [[1.0 if i == j else 0.0 for j in range(4)] for i in range(4)]
    assert aqr.mutual_information(identity, [0.25] * 4) == pytest.approx(2.0)

    ens = aqr.make_mpsk_ensemble(4, 1.0)
    model = aqr.SystemModel.ideal(4)
    flat = aqr.optimize_flat(ens, model)
    record = aqr.ScheduleRecord(flat.strategy, ens, model, flat.p_error)
    path = tmp_path / "schedule.json"
    aqr.save_schedule(str(path), record)
    loaded = aqr.load_schedule(str(path))
    assert loaded.strategy.ratios == flat.strategy.ratios
    assert aqr.evaluate_strategy(
        loaded.strategy, loaded.ensemble, loaded.model
    ).p_error == pytest.approx(loaded.p_error, abs=1e-10)
