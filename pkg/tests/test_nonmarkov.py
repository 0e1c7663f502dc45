import math
from dataclasses import replace

import numpy as np
import pytest

from collisim import linalg, nonmarkov, qstate
from collisim.engine import (AncillaStream, CollisionConfig,
                             partial_swap_interaction, run_paired)
from collisim.errors import ConfigError

SZ = linalg.SIGMA_Z
EXCITED = qstate.pure_state([1, 0])
GROUND = qstate.pure_state([0, 1])


def qubit_config(theta=0.3 * math.pi, n_steps=8, aa_mode="off", aa_swap_prob=0.0,
                 **extra):
    h = SZ / 2
    stream = AncillaStream(2, h, GROUND)
    return CollisionConfig(
        system_dim=2, system_hamiltonian=h, system_init=EXCITED,
        streams=[stream], interactions=[partial_swap_interaction(2)],
        tau=1.0, coupling=theta, n_steps=n_steps, aa_mode=aa_mode,
        aa_swap_prob=aa_swap_prob, **extra)


class TestBlpMeasure:
    def test_hand_series(self):
        # increments +? only 0.3->0.4 counts: sum of positive jumps is 0.1
        assert nonmarkov.blp_measure([0.5, 0.3, 0.4, 0.2]) == pytest.approx(0.1)

    def test_monotone_series_scores_zero(self):
        assert nonmarkov.blp_measure([1.0, 0.7, 0.5, 0.5, 0.2]) == 0.0

    def test_threshold_filters_noise(self):
        assert nonmarkov.blp_measure([0.5, 0.5 + 1e-13]) == 0.0

    def test_too_short(self):
        with pytest.raises(ConfigError):
            nonmarkov.blp_measure([0.5])

    def test_first_revival_step(self):
        assert nonmarkov.first_revival_step([0.5, 0.3, 0.4, 0.2]) == 1
        assert nonmarkov.first_revival_step([0.5, 0.3, 0.2]) is None


class TestDistinguishabilitySeries:
    def test_markovian_decay(self):
        cfg = qubit_config(n_steps=10)
        ta, tb = run_paired(cfg, EXCITED, GROUND)
        series = nonmarkov.distinguishability_series(ta, tb)
        assert series.values[0] == pytest.approx(1.0, abs=1e-12)
        assert np.all(np.diff(series.values) <= 1e-12)
        assert nonmarkov.blp_measure(series) == 0.0

    def test_metric_choice_is_respected(self):
        cfg = qubit_config(n_steps=4)
        ta, tb = run_paired(cfg, EXCITED, GROUND)
        tr = nonmarkov.distinguishability_series(ta, tb, "trace")
        js = nonmarkov.distinguishability_series(ta, tb, "jensen-shannon")
        assert tr.metric == "trace"
        assert js.metric == "jensen-shannon"
        # both start at their maximal value for orthogonal pure states
        assert tr.values[0] == pytest.approx(1.0, abs=1e-10)
        assert js.values[0] == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("metric", ["trace", "jensen-shannon"])
    def test_aa_collisions_create_revivals(self, metric):
        cfg = qubit_config(n_steps=10, aa_mode="coherent", aa_swap_prob=1.0,
                           pair_metric=metric)
        ta, tb = run_paired(cfg, EXCITED, GROUND)
        series = nonmarkov.distinguishability_series(ta, tb, metric)
        assert nonmarkov.blp_measure(series) > 0.1


class TestSwapProbabilityOrdering:
    @pytest.mark.parametrize("mode", ["coherent", "incoherent"])
    def test_measure_grows_with_swap_probability(self, mode):
        values = []
        for p in (0.0, 0.5, 1.0):
            cfg = qubit_config(n_steps=12, aa_mode=mode if p > 0 else "off",
                               aa_swap_prob=p, rng_seed=3)
            ta, tb = run_paired(cfg, EXCITED, GROUND)
            values.append(nonmarkov.blp_measure(
                nonmarkov.distinguishability_series(ta, tb)))
        assert values[0] == 0.0
        assert values[0] < values[1] < values[2]


class TestPairOptimization:
    def test_markovian_optimum_is_zero(self):
        cfg = qubit_config(n_steps=8)
        _, best = nonmarkov.blp_optimize_pairs(cfg, grid_resolution=3)
        assert best == 0.0

    def test_resolution_one_is_the_pole_pair(self):
        cfg = qubit_config(n_steps=6, aa_mode="coherent", aa_swap_prob=1.0)
        (a, b), best = nonmarkov.blp_optimize_pairs(cfg, grid_resolution=1)
        assert qstate.trace_distance(a, EXCITED) < 1e-12
        assert qstate.trace_distance(b, GROUND) < 1e-12
        ta, tb = run_paired(cfg, EXCITED, GROUND)
        assert best == pytest.approx(nonmarkov.blp_measure(
            nonmarkov.distinguishability_series(ta, tb)), abs=1e-12)

    def test_grid_optimum_dominates_pole_pair(self):
        cfg = qubit_config(n_steps=6, aa_mode="coherent", aa_swap_prob=1.0)
        _, pole = nonmarkov.blp_optimize_pairs(cfg, grid_resolution=1)
        _, best = nonmarkov.blp_optimize_pairs(cfg, grid_resolution=4)
        assert best >= pole - 1e-12

    def test_antipodal_pair_construction(self):
        a, b = nonmarkov.antipodal_pair(0.7, 1.2)
        assert qstate.trace_distance(a, b) == pytest.approx(1.0, abs=1e-10)

    def test_qubit_only(self):
        h = np.diag([1.0, 0.0, -1.0]).astype(complex)
        stream = AncillaStream(3, h, qstate.maximally_mixed(3))
        cfg = CollisionConfig(3, h, qstate.maximally_mixed(3), [stream],
                              [partial_swap_interaction(3)])
        with pytest.raises(ConfigError):
            nonmarkov.blp_optimize_pairs(cfg)


class TestBoundReports:
    def test_markovian_revivals_never_positive(self):
        cfg = qubit_config(n_steps=6)
        rep = nonmarkov.revival_bound_report(cfg, EXCITED, GROUND, 2, 5)
        assert rep.lhs <= 1e-12
        assert rep.slack >= -1e-9

    def test_coincident_endpoints(self):
        cfg = qubit_config(n_steps=5, aa_mode="coherent", aa_swap_prob=0.7)
        rep = nonmarkov.revival_bound_report(cfg, EXCITED, GROUND, 3, 3)
        assert rep.lhs == pytest.approx(0.0, abs=1e-12)
        assert rep.slack >= -1e-9

    def test_revival_is_bounded(self):
        cfg = qubit_config(n_steps=8, aa_mode="coherent", aa_swap_prob=1.0)
        ta, tb = run_paired(replace(cfg, backend="full",
                                    keep_joint_snapshots=True), EXCITED, GROUND)
        series = nonmarkov.distinguishability_series(ta, tb)
        s = nonmarkov.first_revival_step(series)
        assert s is not None
        rep = nonmarkov.bound_report_from_pair(ta, tb, s, s + 1)
        assert rep.lhs > 1e-6
        assert rep.slack >= -1e-9

    def test_exhaustive_family_holds(self):
        cfg = qubit_config(n_steps=6, aa_mode="coherent", aa_swap_prob=0.8)
        ta, tb = run_paired(replace(cfg, backend="full",
                                    keep_joint_snapshots=True), EXCITED, GROUND)
        reports = nonmarkov.all_pair_bound_reports(ta, tb)
        assert len(reports) == 7 * 8 // 2
        assert min(r.slack for r in reports) >= -1e-9

    def test_time_ordering_required(self):
        cfg = qubit_config(n_steps=4, aa_mode="coherent", aa_swap_prob=1.0)
        ta, tb = run_paired(replace(cfg, backend="full",
                                    keep_joint_snapshots=True), EXCITED, GROUND)
        with pytest.raises(ConfigError):
            nonmarkov.bound_report_from_pair(ta, tb, 3, 1)

    def test_windowed_backend_rejected(self):
        cfg = qubit_config(n_steps=4)
        ta, tb = run_paired(cfg, EXCITED, GROUND)
        with pytest.raises(ConfigError):
            nonmarkov.bound_report_from_pair(ta, tb, 1, 2)


class TestPrecursorSeries:
    def test_uncoupled_is_flat_zero(self):
        cfg = replace(qubit_config(n_steps=5), coupling=0.0)
        env, c_a, c_b = nonmarkov.precursor_series(cfg, EXCITED, GROUND)
        assert np.max(env) < 1e-12
        assert np.max(c_a) < 1e-12
        assert np.max(c_b) < 1e-12

    def test_markovian_correlations_without_backflow(self):
        # correlations and environment changes build up, but no revival follows
        cfg = qubit_config(n_steps=6)
        env, c_a, c_b = nonmarkov.precursor_series(cfg, EXCITED, GROUND)
        assert env.max() > 1e-3
        ta, tb = run_paired(cfg, EXCITED, GROUND)
        series = nonmarkov.distinguishability_series(ta, tb)
        assert nonmarkov.first_revival_step(series) is None

    def test_precursors_precede_the_revival(self):
        cfg = qubit_config(n_steps=9, aa_mode="coherent", aa_swap_prob=1.0)
        env, c_a, c_b = nonmarkov.precursor_series(cfg, EXCITED, GROUND)
        ta, tb = run_paired(cfg, EXCITED, GROUND)
        s = nonmarkov.first_revival_step(nonmarkov.distinguishability_series(ta, tb))
        assert s is not None and s >= 1
        total = env + c_a + c_b
        assert total[s] > 1e-6
