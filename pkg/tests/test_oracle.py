import cmath
import math

import numpy as np
import pytest

from mixnum import ini, oracle
from mixnum.core import pair_from_counts
from mixnum.errors import IndexOutOfRange, ToleranceNotReached, ValidationError

from frozen import QUAD_2_1_1, SOE_2_8_1_1, SOE_2_8_1_1_MAG


class TestQuadrature:
    def test_constant_phase(self, pair_2_8):
        r = oracle.rho_continuous_quadrature(pair_2_8, 1, 2, tol=1e-11)
        assert abs(r.value - 1 / math.sqrt(2)) < 1e-11
        assert r.kind == ini.ORACLE_QUADRATURE

    def test_half_distance(self, pair_2_8):
        r = oracle.rho_continuous_quadrature(pair_2_8, 1, 1, tol=1e-11)
        assert abs(r.value - QUAD_2_1_1) < 1e-9

    def test_zero_crossing(self, pair_2_8):
        assert abs(oracle.rho_continuous_quadrature(pair_2_8, 2, 2, tol=1e-11).value) < 1e-10

    @pytest.mark.parametrize("tol", [1e-14, 1e-5])
    def test_tol_range(self, pair_2_8, tol):
        with pytest.raises(ValidationError):
            oracle.rho_continuous_quadrature(pair_2_8, 1, 1, tol=tol)

    def test_panel_cap(self):
        with pytest.raises(ToleranceNotReached):
            oracle.adaptive_gauss_kronrod(lambda t: np.exp(200j * t), 0.0, 100.0, 1e-13, max_panels=64)

    @pytest.mark.parametrize("m, n", [(0, 1), (3, 5), (7, 0), (4, 15)])
    def test_tol_halving(self, pair_2_8, m, n):
        coarse = oracle.rho_continuous_quadrature(pair_2_8, m, n, tol=1e-8).value
        fine = oracle.rho_continuous_quadrature(pair_2_8, m, n, tol=5e-9).value
        assert abs(coarse - fine) <= 1e-8

    def test_narrow_direction(self, pair_2_8):
        a = oracle.rho_continuous_quadrature(pair_2_8, 3, 5).value
        b = oracle.rho_continuous_quadrature(pair_2_8, 3, 5, direction=ini.NARROW_FROM_WIDE).value
        assert abs(a - b.conjugate()) < 1e-12

    def test_matrix_matches_scalar(self):
        p = pair_from_counts(2, 4)
        mat = oracle.quadrature_matrix(p)
        for m in range(4):
            for n in range(8):
                assert abs(mat[m, n] - oracle.rho_continuous_quadrature(p, m, n).value) < 1e-11

    def test_reduced_form_agreement(self):
        p = pair_from_counts(4, 16)
        diff = oracle.quadrature_matrix(p) - ini.ini_matrix(p, ini.CONTINUOUS).values
        assert np.max(np.abs(diff)) < 1e-9


class TestSoe:
    def test_unit_summands(self, pair_2_8):
        assert abs(oracle.rho_discrete_soe(pair_2_8, 1, 2).value - 1 / math.sqrt(2)) < 1e-15

    def test_half_distance(self, pair_2_8):
        r = oracle.rho_discrete_soe(pair_2_8, 1, 1)
        assert abs(r.value - SOE_2_8_1_1) < 1e-15
        assert abs(r.magnitude - SOE_2_8_1_1_MAG) < 1e-12

    def test_zero_crossing(self, pair_2_8):
        assert abs(oracle.rho_discrete_soe(pair_2_8, 0, 4).value) < 1e-15

    def test_order_reversal(self):
        p = pair_from_counts(4, 32)
        for m, n in [(0, 1), (5, 77), (31, 127)]:
            terms = oracle._segment_terms(p, m, n, 0)
            fwd = oracle.compensated_sum(terms)
            rev = oracle.compensated_sum(terms[::-1])
            for a, b in ((fwd.real, rev.real), (fwd.imag, rev.imag)):
                assert abs(a - b) <= math.ulp(max(abs(a), abs(b), 1e-300))

    def test_compensated_sum_exactness(self):
        vals = np.array([1e16, 1.0, -1e16, 1.0]) * (1 + 1j)
        assert oracle.compensated_sum(vals) == 2 + 2j

    def test_matrix_matches_scalar(self, pair_2_8):
        mat = oracle.soe_matrix(pair_2_8)
        for m in range(8):
            for n in range(16):
                assert abs(mat[m, n] - oracle.rho_discrete_soe(pair_2_8, m, n).value) < 1e-15

    @pytest.mark.parametrize("nu, n1", [(2, 8), (4, 16), (8, 32)])
    def test_reduced_form_agreement(self, nu, n1):
        p = pair_from_counts(nu, n1)
        diff = oracle.soe_matrix(p) - ini.ini_matrix(p, ini.DISCRETE).values
        assert np.max(np.abs(diff.real)) < 1e-12
        assert np.max(np.abs(diff.imag)) < 1e-12


class TestSegment:
    def test_q_zero(self, pair_2_8):
        for m, n in [(0, 0), (1, 1), (3, 7), (7, 15)]:
            assert oracle.segment_rho_soe(pair_2_8, m, n, 0) == oracle.rho_discrete_soe(pair_2_8, m, n).value

    def test_sign_flip(self, pair_2_8):
        seg = oracle.segment_rho_soe(pair_2_8, 1, 1, 1)
        assert abs(seg + oracle.rho_discrete_soe(pair_2_8, 1, 1).value) < 1e-12

    def test_q_range(self, pair_2_8):
        with pytest.raises(IndexOutOfRange):
            oracle.segment_rho_soe(pair_2_8, 1, 1, 2)

    @pytest.mark.parametrize("nu, n1", [(2, 8), (4, 4), (4, 16), (8, 8)])
    def test_segment_phase(self, nu, n1):
        p = pair_from_counts(nu, n1)
        for q in range(nu):
            for m in range(p.n1):
                for n in range(p.n2):
                    seg = oracle.segment_rho_soe(p, m, n, q)
                    base = oracle.rho_discrete_soe(p, m, n).value
                    assert abs(seg - cmath.exp(2j * math.pi * n * q / nu) * base) < 1e-12
                    assert abs(abs(seg) - abs(base)) < 1e-12

    def test_table_matches_scalar(self):
        p = pair_from_counts(4, 8)
        table = oracle.segment_soe_table(p)
        assert table.shape == (4, 8, 32)
        for q in range(4):
            for m in range(8):
                for n in range(32):
                    assert abs(table[q, m, n] - oracle.segment_rho_soe(p, m, n, q)) < 1e-15
