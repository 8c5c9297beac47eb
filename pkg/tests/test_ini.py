import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mixnum import ini
from mixnum.core import pair_from_counts
from mixnum.errors import CapExceeded, DomainError, IndexOutOfRange

from frozen import (
    BETA_0_5_N8,
    BETA_2_5_N64,
    BETA_3_5_N8,
    CONVERGENCE_GAP,
    ERR_PCT_0_5_N8,
    QUAD_2_1_1,
    QUAD_2_1_1_MAG,
    SOE_2_8_1_1,
    SOE_2_8_1_1_MAG,
)

INV_SQRT2 = 1 / math.sqrt(2)


@pytest.mark.parametrize("m, n, nu, d", [(1, 1, 2, 0.5), (1, 2, 2, 0.0), (0, 3, 4, -0.75), (5, 3, 8, 4.625)])
def test_relative_distance(m, n, nu, d):
    assert ini.relative_distance(m, n, nu) == d


class TestRhoContinuous:
    def test_co_located(self, pair_2_8):
        r = ini.rho_continuous(pair_2_8, 1, 2)
        assert r.value == complex(INV_SQRT2, 0) or abs(r.value - INV_SQRT2) < 1e-16
        assert r.d == 0.0

    def test_half_distance(self, pair_2_8):
        r = ini.rho_continuous(pair_2_8, 1, 1)
        assert abs(r.value - QUAD_2_1_1) < 1e-15
        assert r.magnitude == pytest.approx(QUAD_2_1_1_MAG, abs=1e-15)
        assert r.kind == ini.CONTINUOUS

    def test_zero_crossing(self, pair_2_8):
        assert ini.rho_continuous(pair_2_8, 2, 2).value == 0

    def test_index_range(self, pair_2_8):
        with pytest.raises(IndexOutOfRange):
            ini.rho_continuous(pair_2_8, 8, 0)
        with pytest.raises(IndexOutOfRange):
            ini.rho_continuous(pair_2_8, 0, 16)


class TestRhoDiscrete:
    def test_co_located(self, pair_2_8):
        assert abs(ini.rho_discrete(pair_2_8, 1, 2).value - INV_SQRT2) < 1e-16

    def test_half_distance(self, pair_2_8):
        r = ini.rho_discrete(pair_2_8, 1, 1)
        assert abs(r.value - SOE_2_8_1_1) < 1e-15
        assert r.magnitude == pytest.approx(SOE_2_8_1_1_MAG, abs=1e-15)
        assert r.n1 == 8

    def test_zero_crossing_exact(self, pair_2_8):
        assert ini.rho_discrete(pair_2_8, 2, 2).value == 0

    def test_aliasing_branch_total(self):
        # d = N1 is unreachable from valid indices; the kernel still returns the limit
        v = ini.discrete_value(8.0, 2, 8)
        assert abs(v - INV_SQRT2) < 1e-15


class TestMagnitudes:
    def test_quarter_distance(self):
        p = pair_from_counts(4, 8)
        assert ini.magnitude_continuous(p, 0, 1) == pytest.approx(QUAD_2_1_1_MAG, abs=1e-15)

    def test_even_n_zero(self, pair_2_8):
        for m in range(8):
            for n in range(0, 16, 2):
                if n != 2 * m:
                    assert ini.magnitude_continuous(pair_2_8, m, n) == 0
                    assert ini.magnitude_discrete(pair_2_8, m, n) == 0

    def test_upper_bound_nu8(self):
        p = pair_from_counts(8, 8)
        assert ini.magnitude_continuous(p, 0, 0) == pytest.approx(1 / math.sqrt(8), abs=1e-16)


class TestBeta:
    def test_zero(self):
        for n1 in (1, 8, 64, 1024):
            assert ini.beta(0.0, n1) == 1.0

    def test_frozen(self):
        assert ini.beta(3.5, 8) == pytest.approx(BETA_3_5_N8, abs=1e-14)
        assert ini.beta(2.5, 64) == pytest.approx(BETA_2_5_N64, abs=1e-14)
        assert ini.beta(0.5, 8) == pytest.approx(BETA_0_5_N8, abs=1e-14)

    @pytest.mark.parametrize("d", [8.0, -8.0, 9.5, float("nan")])
    def test_domain(self, d):
        with pytest.raises(DomainError):
            ini.beta(d, 8)

    def test_error_pct(self):
        assert ini.discretization_error_pct(0.5, 8) == pytest.approx(ERR_PCT_0_5_N8, abs=1e-12)
        assert ini.discretization_error_pct(0.0, 16) == 0.0

    def test_min_samples(self):
        assert ini.min_samples_for_tolerance(2.5, 0.3) == 64
        assert ini.min_samples_for_tolerance(0.0, 0.0) == 1

    def test_min_samples_brute_force(self):
        for d in (0.5, 1.0, 2.5, 3.75, 10.0):
            for tol in (10.0, 1.0, 0.1, 0.01):
                n = 1
                while n <= abs(d) or ini.discretization_error_pct(d, n) > tol:
                    n *= 2
                assert ini.min_samples_for_tolerance(d, tol) == n

    @given(st.floats(min_value=-63.9, max_value=63.9, allow_nan=False),
           st.sampled_from([64, 128, 1024]))
    def test_beta_at_least_one(self, d, n1):
        b = ini.beta(d, n1)
        assert b >= 1.0
        if d != 0 and abs(d) > 1e-6:
            assert b > 1.0


class TestOrthogonality:
    @pytest.mark.parametrize("m, n, nu, expected", [(3, 4, 2, True), (3, 5, 2, False), (2, 4, 2, False)])
    def test_examples(self, m, n, nu, expected):
        assert ini.is_orthogonal(m, n, nu) is expected

    @pytest.mark.parametrize("nu, n1", [(2, 8), (4, 8), (8, 4)])
    def test_predicate_matches_magnitudes(self, nu, n1):
        p = pair_from_counts(nu, n1)
        for m in range(p.n1):
            for n in range(p.n2):
                zero_c = ini.magnitude_continuous(p, m, n) < 1e-12
                zero_d = ini.magnitude_discrete(p, m, n) < 1e-12
                assert ini.is_orthogonal(m, n, nu) == zero_c == zero_d

    def test_subsets_nu2(self):
        subsets = ini.orthogonal_subsets(pair_from_counts(2, 4))
        assert [s.name for s in subsets] == ["wide", "narrow", "mixed"]
        mixed = subsets[2]
        assert mixed.wide == (0, 1, 2, 3)
        assert mixed.narrow == (0, 2, 4, 6)
        assert mixed.co_located == ((0, 0), (1, 2), (2, 4), (3, 6))

    def test_subsets_nu4(self):
        mixed = ini.orthogonal_subsets(pair_from_counts(4, 4))[2]
        assert mixed.narrow == (0, 4, 8, 12)

    def test_subsets_smallest(self):
        mixed = ini.orthogonal_subsets(pair_from_counts(2, 1))[2]
        assert mixed.narrow == (0,)
        assert mixed.co_located == ((0, 0),)


class TestIniMatrix:
    def test_zeros_where_orthogonal(self):
        p = pair_from_counts(2, 2)
        mat = ini.ini_matrix(p, ini.CONTINUOUS)
        assert mat.values.shape == (2, 4)
        for m in range(2):
            for n in range(4):
                assert (mat.magnitudes[m, n] == 0) == ini.is_orthogonal(m, n, 2)

    def test_co_located_entries(self):
        p = pair_from_counts(4, 8)
        mat = ini.ini_matrix(p, ini.DISCRETE)
        for m in range(8):
            assert mat.values[m, 4 * m] == pytest.approx(0.5, abs=1e-16)

    @pytest.mark.parametrize("mode", [ini.CONTINUOUS, ini.DISCRETE])
    def test_conjugate_transpose(self, mode):
        p = pair_from_counts(4, 8)
        a = ini.ini_matrix(p, mode)
        b = ini.ini_matrix(p, mode, direction=ini.NARROW_FROM_WIDE)
        np.testing.assert_array_equal(b.values, a.values.conj().T)

    def test_entries_match_scalar(self, pair_2_8):
        mat = ini.ini_matrix(pair_2_8, ini.DISCRETE)
        for m in range(8):
            for n in range(16):
                assert mat.entry(m, n).value == ini.rho_discrete(pair_2_8, m, n).value

    def test_power_sums(self, pair_2_8):
        # sampled wide pulse has unit norm, so its projection onto the full
        # narrow basis carries all of its energy
        rows, cols = ini.ini_matrix(pair_2_8, ini.DISCRETE).ini_power_per_subcarrier()
        np.testing.assert_allclose(rows, 1.0, atol=1e-13)
        assert cols.shape == (16,)

    def test_cap(self, pair_2_8):
        with pytest.raises(CapExceeded):
            ini.ini_matrix(pair_2_8, cap=100)


class TestProperties:
    @pytest.mark.parametrize("nu, n1", [(2, 8), (4, 16), (8, 8)])
    def test_conjugate_symmetry_scalar(self, nu, n1):
        p = pair_from_counts(nu, n1)
        for fn in (ini.rho_continuous, ini.rho_discrete):
            for m in range(p.n1):
                for n in range(p.n2):
                    a = fn(p, m, n).value
                    b = fn(p, m, n, direction=ini.NARROW_FROM_WIDE).value
                    assert a == b.conjugate()

    @pytest.mark.parametrize("nu, n1", [(2, 8), (4, 32), (8, 64)])
    def test_magnitude_relation(self, nu, n1):
        p = pair_from_counts(nu, n1)
        for m in range(p.n1):
            for n in range(p.n2):
                d = ini.relative_distance(m, n, nu)
                lhs = ini.magnitude_discrete(p, m, n)
                rhs = ini.magnitude_continuous(p, m, n) * ini.beta(d, n1)
                assert abs(lhs - rhs) < 1e-12

    @pytest.mark.parametrize("nu, n1", [(2, 8), (4, 16), (8, 8)])
    def test_magnitude_bounds(self, nu, n1):
        p = pair_from_counts(nu, n1)
        bound = 1 / math.sqrt(nu)
        for mode in (ini.CONTINUOUS, ini.DISCRETE):
            mat = ini.ini_matrix(p, mode)
            mags = mat.magnitudes
            assert np.all(mags <= bound * (1 + 1e-15))
            at_bound = np.isclose(mags, bound, rtol=0, atol=1e-15)
            np.testing.assert_array_equal(at_bound, mat.d == 0)

    def test_convergence(self):
        gaps = []
        for k in range(3, 11):
            n1 = 2**k
            gap = float(ini.discrete_magnitude_from_d(0.5, 2, n1) - ini.continuous_magnitude_from_d(0.5, 2))
            assert gap == pytest.approx(CONVERGENCE_GAP[n1], rel=1e-9)
            gaps.append(gap)
        assert all(a > b for a, b in zip(gaps, gaps[1:]))
        assert abs(ini.discrete_magnitude_from_d(0.5, 2, 2**20) - ini.continuous_magnitude_from_d(0.5, 2)) < 1e-6

    @given(st.floats(min_value=0.01, max_value=6.0).filter(lambda d: abs(d - round(d)) > 1e-3))
    def test_convergence_monotone_any_d(self, d):
        gaps = [abs(ini.discrete_magnitude_from_d(d, 2, 2**k) - ini.continuous_magnitude_from_d(d, 2))
                for k in range(3, 11)]
        assert all(a > b for a, b in zip(gaps, gaps[1:]))

    def test_scaling_with_nu(self):
        # d = 0.5 at every nu: m=1, n = nu/2
        mags = [ini.magnitude_continuous(pair_from_counts(nu, 8), 1, nu // 2) for nu in (2, 4, 8)]
        assert abs(mags[1] / mags[0] - 1 / math.sqrt(2)) < 1e-12
        assert abs(mags[2] / mags[0] - 0.5) < 1e-12

    @given(st.integers(0, 63), st.integers(0, 511), st.sampled_from([2, 4, 8]))
    def test_inner_product_invariants(self, m, n, nu):
        p = pair_from_counts(nu, 64)
        n = n % p.n2
        for r in (ini.rho_continuous(p, m, n), ini.rho_discrete(p, m, n)):
            assert r.magnitude == abs(r.value)
            assert 0 <= r.magnitude <= 1 / math.sqrt(nu) + 1e-16
