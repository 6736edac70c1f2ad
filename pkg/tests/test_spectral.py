"""Kernel, Nystrom spectrum, operator trace and p-value sampling tests."""

import math

import numpy as np
import pytest

from eppspulley.spectral import (
    _kernel_diag_trace,
    kernel,
    lambda1,
    null_pvalue,
    nystrom_spectrum,
    operator_trace,
)
from eppspulley.statistic import TuningParam


class TestKernel:
    def test_zero_at_origin(self):
        assert float(kernel(0.0, 0.0)) == 0.0

    def test_value_at_one_minus_one(self):
        # exp(-2) - 0.5*exp(-1)
        expected = math.exp(-2.0) - 0.5 * math.exp(-1.0)
        assert float(kernel(1.0, -1.0)) == pytest.approx(expected, rel=1e-15)
        assert expected == pytest.approx(-0.0486044374, abs=1e-9)

    def test_symmetry_exact(self):
        rng = np.random.default_rng(3)
        s = rng.normal(scale=3.0, size=200)
        t = rng.normal(scale=3.0, size=200)
        assert np.array_equal(kernel(s, t), kernel(t, s))

    def test_diagonal_nonnegative(self):
        grid = np.linspace(-10.0, 10.0, 201)
        assert np.all(kernel(grid, grid) >= 0.0)

    def test_gram_positive_semidefinite_spot_check(self):
        rng = np.random.default_rng(42)
        for _ in range(50):
            pts = rng.normal(scale=rng.uniform(0.3, 3.0), size=20)
            gram = kernel(pts[:, None], pts[None, :])
            assert np.linalg.eigvalsh(gram).min() >= -1e-10


class TestNystromSpectrum:
    def test_reproducible_bit_identical(self):
        tp = TuningParam(1.0)
        a = nystrom_spectrum(tp, 200, 3, seed=7, top_m=4)
        b = nystrom_spectrum(tp, 200, 3, seed=7, top_m=4)
        assert np.array_equal(a.per_run, b.per_run)
        assert np.array_equal(a.eigenvalues, b.eigenvalues)
        assert a.trace_estimate == b.trace_estimate

    def test_different_seeds_differ(self):
        tp = TuningParam(1.0)
        a = nystrom_spectrum(tp, 200, 2, seed=1, top_m=3)
        b = nystrom_spectrum(tp, 200, 2, seed=2, top_m=3)
        assert not np.array_equal(a.per_run, b.per_run)

    def test_eigenvalues_descending_and_clipped(self):
        sp = nystrom_spectrum(TuningParam(0.5), 300, 4, seed=11, top_m=6)
        assert np.all(np.diff(sp.eigenvalues) <= 0.0)
        assert np.all(sp.eigenvalues >= 0.0)
        assert np.all(sp.per_run >= 0.0)
        assert sp.n_clipped >= 0

    @pytest.mark.parametrize("beta", [0.25, 1.0, 3.0])
    def test_eigen_sum_equals_trace_per_run(self, beta):
        sp = nystrom_spectrum(TuningParam(beta), 400, 4, seed=5, top_m=5)
        assert np.max(np.abs(sp.per_run_eigen_sum - sp.per_run_trace)) <= 1e-10

    def test_doubling_runs_stays_within_mc_noise(self):
        tp = TuningParam(1.0)
        base = nystrom_spectrum(tp, 300, 10, seed=23, top_m=5)
        doubled = nystrom_spectrum(tp, 300, 20, seed=23, top_m=5)
        se = base.per_run.std(axis=0, ddof=1) / math.sqrt(base.runs)
        assert np.all(np.abs(doubled.eigenvalues - base.eigenvalues) <= 3.0 * se)

    def test_validation(self):
        tp = TuningParam(1.0)
        with pytest.raises(ValueError):
            nystrom_spectrum(tp, 50, 2)
        with pytest.raises(ValueError):
            nystrom_spectrum(tp, 200, 0)
        with pytest.raises(ValueError):
            nystrom_spectrum(tp, 200, 2, top_m=0)
        with pytest.raises(ValueError):
            nystrom_spectrum(tp, 200, 2, top_m=201)


class TestOperatorTrace:
    def test_matches_diagonal_mc_at_large_n(self):
        tp = TuningParam(1.0)
        exact = operator_trace(tp)
        mc = _kernel_diag_trace(tp, 10_000, seed=42)
        assert abs(mc - exact) / exact < 0.02

    def test_vanishes_for_tiny_beta(self):
        # K(t,t) = t^6/6 + O(t^8) near 0, so the trace behaves like
        # 15 beta^6 / 6 as beta -> 0
        trace = operator_trace(TuningParam(0.01))
        assert trace == pytest.approx(2.5e-12, rel=1e-3)

    @pytest.mark.parametrize("beta", [0.5, 1.0, 3.0])
    def test_dominates_largest_eigenvalue(self, beta):
        tp = TuningParam(beta)
        lam = lambda1(tp, 400, 4, seed=3)
        assert operator_trace(tp) >= lam - 0.005

    def test_mean_eigen_sum_near_trace_at_reference_protocol(self):
        tp = TuningParam(1.0)
        sp = nystrom_spectrum(tp, 1000, 10, seed=42, top_m=5)
        exact = operator_trace(tp)
        assert abs(np.mean(sp.per_run_eigen_sum) - exact) / exact <= 0.03


class TestLambda1:
    def test_reference_values(self):
        assert lambda1(TuningParam(0.25), 1000, 10, seed=42) == pytest.approx(0.00040, abs=2e-4)
        assert lambda1(TuningParam(10.0), 1000, 10, seed=42) == pytest.approx(0.08791, abs=5e-3)

    def test_protocol_self_consistency(self):
        tp = TuningParam(1.0)
        coarse = lambda1(tp, 1000, 10, seed=42)
        fine = lambda1(tp, 2000, 10, seed=42)
        assert abs(fine - coarse) / coarse < 0.02


@pytest.fixture(scope="module")
def spectrum():
    return nystrom_spectrum(TuningParam(1.0), 400, 4, seed=9, top_m=5)


class TestNullPvalue:

    def test_bounds_and_monotonicity(self, spectrum):
        ps = [null_pvalue(t, spectrum, 20_000, seed=1) for t in (0.0, 0.1, 0.5, 2.0)]
        assert all(0.0 <= p <= 1.0 for p in ps)
        assert ps == sorted(ps, reverse=True)
        assert ps[0] == 1.0  # statistic 0 is below every draw

    def test_reproducible(self, spectrum):
        a = null_pvalue(0.3, spectrum, 30_000, seed=4)
        b = null_pvalue(0.3, spectrum, 30_000, seed=4)
        assert a == b

    def test_validation(self, spectrum):
        with pytest.raises(ValueError):
            null_pvalue(0.3, spectrum, 0)
