"""Brute-force inner products used to certify the reduced forms.

Nothing here calls into the closed forms of :mod:`mixnum.ini`. The continuous
oracle integrates the product of the two pulses numerically; the discrete
oracles sum sampled pulse products directly with compensated accumulation.
"""

from __future__ import annotations

import math

import numpy as np

from .basis import continuous_pulse_values, discrete_basis_matrix, pulse_discrete, SubcarrierRef
from .core import NumerologyPair
from .errors import IndexOutOfRange, ToleranceNotReached, ValidationError
from .ini import (
    NARROW_FROM_WIDE,
    ORACLE_QUADRATURE,
    ORACLE_SOE,
    WIDE_FROM_NARROW,
    InnerProduct,
    check_indices,
    relative_distance,
)

MAX_PANELS = 2**20
INITIAL_PANELS = 8
TOL_RANGE = (1e-13, 1e-6)

# Owners integrated together per batch; bounds peak memory of the node array.
_BATCH_OWNERS = 4096

# 7-point Gauss / 15-point Kronrod abscissae and weights on [-1, 1] (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])  # 15 nodes, ascending
_KRONROD_W = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS_W = np.zeros(15)
_GAUSS_W[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])


# -- compensated accumulation -------------------------------------------------

def _two_sum(a, b):
    s = a + b
    bp = s - a
    return s, (a - (s - bp)) + (b - bp)


def compensated_sum(values, axis: int = 0):
    """Sum along ``axis`` with Neumaier/TwoSum error compensation.

    Real and imaginary parts are accumulated independently. Returns a complex
    scalar for 1-D input, an array otherwise.
    """
    values = np.moveaxis(np.asarray(values, dtype=complex), axis, 0)
    out = []
    for part in (values.real, values.imag):
        acc = np.zeros(part.shape[1:])
        comp = np.zeros(part.shape[1:])
        for term in part:
            acc, err = _two_sum(acc, term)
            comp += err
        out.append(acc + comp)
    total = out[0] + 1j * out[1]
    return complex(total) if total.ndim == 0 else total


# -- adaptive quadrature ------------------------------------------------------

def adaptive_gauss_kronrod_batch(f, owners: int, a: float, b: float, tol: float,
                                 max_panels: int = MAX_PANELS) -> tuple[np.ndarray, np.ndarray]:
    """Integrate ``owners`` complex integrands over ``[a, b]``, each to absolute error ``tol``.

    ``f(idx, x)`` evaluates integrand ``idx[i]`` at abscissae ``x[i, :]``.
    Every panel is bisected until its ``|K15 - G7|`` estimate (real plus
    imaginary) is at most its length-proportional share of ``tol``. The panel
    cap applies per integrand.
    """
    length = b - a
    edges = np.linspace(a, b, INITIAL_PANELS + 1)
    idx = np.repeat(np.arange(owners), INITIAL_PANELS)
    lo = np.tile(edges[:-1], owners)
    hi = np.tile(edges[1:], owners)
    panels = np.full(owners, INITIAL_PANELS)
    pieces_idx, pieces_val = [], []
    err_total = np.zeros(owners)
    while idx.size:
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        x = mid[:, None] + half[:, None] * _NODES[None, :]
        fx = np.asarray(f(idx, x), dtype=complex)
        kronrod = half * (fx @ _KRONROD_W)
        gauss = half * (fx @ _GAUSS_W)
        err = np.abs(kronrod.real - gauss.real) + np.abs(kronrod.imag - gauss.imag)
        ok = err <= tol * (hi - lo) / length
        pieces_idx.append(idx[ok])
        pieces_val.append(kronrod[ok])
        np.add.at(err_total, idx[ok], err[ok])
        idx, lo, hi = idx[~ok], lo[~ok], hi[~ok]
        if idx.size:
            np.add.at(panels, idx, 1)
            if panels.max() > max_panels:
                raise ToleranceNotReached(f"more than {max_panels} panels needed for tol={tol}")
            mid = 0.5 * (lo + hi)
            idx = np.concatenate([idx, idx])
            lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])
    all_idx = np.concatenate(pieces_idx)
    all_val = np.concatenate(pieces_val)
    order = np.argsort(all_idx, kind="stable")
    all_idx, all_val = all_idx[order], all_val[order]
    bounds = np.searchsorted(all_idx, np.arange(owners + 1))
    result = np.array([
        complex(math.fsum(all_val[s:e].real.tolist()), math.fsum(all_val[s:e].imag.tolist()))
        for s, e in zip(bounds[:-1], bounds[1:])
    ])
    return result, err_total


def adaptive_gauss_kronrod(f, a: float, b: float, tol: float,
                           max_panels: int = MAX_PANELS) -> tuple[complex, float]:
    """Single-integrand form; ``f`` takes an array of abscissae."""
    values, errs = adaptive_gauss_kronrod_batch(lambda _, x: f(x), 1, a, b, tol, max_panels)
    return complex(values[0]), float(errs[0])


def _check_tol(tol: float) -> None:
    if not TOL_RANGE[0] <= tol <= TOL_RANGE[1]:
        raise ValidationError(f"tol must lie in [{TOL_RANGE[0]}, {TOL_RANGE[1]}], got {tol}")


def _quadrature(pair: NumerologyPair, m: np.ndarray, n: np.ndarray, tol: float) -> np.ndarray:
    """wide<-narrow integrals of ``conj(phi1_m(t)) phi2_n(t)`` over ``[0, T1]``.

    Both pulses vanish outside their own symbol and ``T1 < T2``, so the wide
    symbol is the whole overlap.
    """
    out = np.empty(m.size, dtype=complex)
    for start in range(0, m.size, _BATCH_OWNERS):
        stop = min(start + _BATCH_OWNERS, m.size)
        chunk_m, chunk_n = m[start:stop], n[start:stop]

        def f(idx, t, cm=chunk_m, cn=chunk_n):
            return (np.conj(continuous_pulse_values(pair.wide, cm[idx][:, None], t))
                    * continuous_pulse_values(pair.narrow, cn[idx][:, None], t))

        out[start:stop], _ = adaptive_gauss_kronrod_batch(
            f, stop - start, 0.0, pair.wide.symbol_duration_s, tol)
    return out


def _direction_sign(direction: str) -> bool:
    if direction == WIDE_FROM_NARROW:
        return False
    if direction == NARROW_FROM_WIDE:
        return True
    raise ValidationError(f"unknown direction {direction!r}")


def rho_continuous_quadrature(pair: NumerologyPair, m: int, n: int, tol: float = 1e-11,
                              direction: str = WIDE_FROM_NARROW) -> InnerProduct:
    """Numerically integrate the product of the two continuous pulses.

    For the narrow<-wide direction the integrand is ``conj(phi2_n) phi1_m``.
    """
    _check_tol(tol)
    check_indices(pair, m, n)
    swap = _direction_sign(direction)
    wide_sc, narrow_sc = SubcarrierRef(pair.wide, m), SubcarrierRef(pair.narrow, n)
    first, second = (narrow_sc, wide_sc) if swap else (wide_sc, narrow_sc)

    def integrand(t):
        return (np.conj(continuous_pulse_values(first.numerology, first.m, t))
                * continuous_pulse_values(second.numerology, second.m, t))

    value, _ = adaptive_gauss_kronrod(integrand, 0.0, pair.wide.symbol_duration_s, tol)
    return InnerProduct(value, relative_distance(m, n, pair.nu), ORACLE_QUADRATURE, direction)


def quadrature_matrix(pair: NumerologyPair, tol: float = 1e-11) -> np.ndarray:
    """wide<-narrow quadrature values for every (m, n), shape ``(N1, N2)``."""
    _check_tol(tol)
    m, n = np.meshgrid(np.arange(pair.n1), np.arange(pair.n2), indexing="ij")
    return _quadrature(pair, m.ravel(), n.ravel(), tol).reshape(pair.n1, pair.n2)


# -- sums of exponentials -----------------------------------------------------

def _segment_terms(pair: NumerologyPair, m: int, n: int, q: int) -> np.ndarray:
    l = np.arange(pair.n1, dtype=np.int64)
    wide = pulse_discrete(SubcarrierRef(pair.wide, m), l)
    narrow = pulse_discrete(SubcarrierRef(pair.narrow, n), q * pair.n1 + l)
    return np.conj(wide) * narrow


def rho_discrete_soe(pair: NumerologyPair, m: int, n: int,
                     direction: str = WIDE_FROM_NARROW) -> InnerProduct:
    """Sum ``conj(phi1_m[l]) phi2_n[l]`` over the ``N1`` shared samples."""
    check_indices(pair, m, n)
    value = compensated_sum(_segment_terms(pair, m, n, 0))
    if _direction_sign(direction):
        # narrow<-wide sums conj(phi2_n[l]) phi1_m[l], the termwise conjugate
        value = value.conjugate()
    return InnerProduct(value, relative_distance(m, n, pair.nu), ORACLE_SOE, direction, n1=pair.n1)


def segment_rho_soe(pair: NumerologyPair, m: int, n: int, q: int) -> complex:
    """Inner product of wide subcarrier ``m`` with segment ``q`` of narrow subcarrier ``n``.

    Segment ``q`` is samples ``q*N1 .. (q+1)*N1 - 1`` of the narrow symbol,
    the part overlapping wide symbol ``nu*k + q``.
    """
    check_indices(pair, m, n)
    if not 0 <= q < pair.nu:
        raise IndexOutOfRange(f"segment {q} outside [0, {pair.nu - 1}]")
    return compensated_sum(_segment_terms(pair, m, n, q))


def segment_soe_table(pair: NumerologyPair) -> np.ndarray:
    """Every ``segment_rho_soe`` value at once, shape ``(nu, N1, N2)``.

    Index ``[0]`` is the SoE matrix of :func:`rho_discrete_soe`.
    """
    wide = discrete_basis_matrix(pair.wide)  # [l, m]
    narrow = discrete_basis_matrix(pair.narrow).reshape(pair.nu, pair.n1, pair.n2)  # [q, l, n]
    out = np.empty((pair.nu, pair.n1, pair.n2), dtype=complex)
    for q in range(pair.nu):
        terms = np.conj(wide)[:, :, None] * narrow[q][:, None, :]  # [l, m, n]
        out[q] = compensated_sum(terms, axis=0)
    return out


def soe_matrix(pair: NumerologyPair) -> np.ndarray:
    """wide<-narrow SoE values for every (m, n), shape ``(N1, N2)``."""
    wide = discrete_basis_matrix(pair.wide)
    narrow = discrete_basis_matrix(pair.narrow, num_samples=pair.n1)
    return compensated_sum(np.conj(wide)[:, :, None] * narrow[:, None, :], axis=0)
