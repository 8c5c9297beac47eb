"""Reduced-form inner products between subcarriers of two numerologies.

Indices follow one convention throughout: ``m`` is a subcarrier of the wide
numerology (larger spacing), ``n`` one of the narrow numerology. The inner
product is conjugate-linear in its first argument, so the wide<-narrow value
is ``<phi1_m, phi2_n> = integral conj(phi1_m) phi2_n`` and the narrow<-wide
value is its complex conjugate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._numeric import dirichlet, expj_pi, sinc
from .core import NumerologyPair
from .errors import CapExceeded, DomainError, IndexOutOfRange, ValidationError

WIDE_FROM_NARROW = "wide<-narrow"
NARROW_FROM_WIDE = "narrow<-wide"
DIRECTIONS = (WIDE_FROM_NARROW, NARROW_FROM_WIDE)

CONTINUOUS = "continuous"
DISCRETE = "discrete"
ORACLE_QUADRATURE = "oracle-quadrature"
ORACLE_SOE = "oracle-soe"

MATRIX_CAP = 2**24

# |rho| below this counts as zero when certifying orthogonal subsets.
ORTHOGONALITY_ATOL = 1e-12


@dataclass(frozen=True)
class InnerProduct:
    value: complex
    d: float
    kind: str
    direction: str = WIDE_FROM_NARROW
    n1: int | None = None
    magnitude: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))
        object.__setattr__(self, "magnitude", abs(self.value))

    def as_dict(self) -> dict:
        out = {
            "re": self.value.real,
            "im": self.value.imag,
            "magnitude": self.magnitude,
            "d": self.d,
            "kind": self.kind,
            "direction": self.direction,
        }
        if self.n1 is not None:
            out["n1"] = self.n1
        return out


def relative_distance(m, n, nu):
    """Normalized centre-frequency offset ``m - n/nu`` (exact for power-of-two nu)."""
    if np.any(np.asarray(nu) < 1):
        raise ValidationError(f"nu must be >= 1, got {nu}")
    d = np.asarray(m, dtype=float) - np.asarray(n, dtype=float) / nu
    return float(d) if d.ndim == 0 else d


def check_indices(pair: NumerologyPair, m: int, n: int) -> None:
    if not 0 <= m < pair.n1:
        raise IndexOutOfRange(f"wide subcarrier {m} outside [0, {pair.n1 - 1}]")
    if not 0 <= n < pair.n2:
        raise IndexOutOfRange(f"narrow subcarrier {n} outside [0, {pair.n2 - 1}]")


def _check_direction(direction: str) -> float:
    if direction == WIDE_FROM_NARROW:
        return -1.0
    if direction == NARROW_FROM_WIDE:
        return 1.0
    raise ValidationError(f"unknown direction {direction!r}")


# -- vectorized kernels over real d -------------------------------------------

def continuous_value(d, nu: int, direction: str = WIDE_FROM_NARROW):
    """``sqrt(1/nu) exp(-+j pi d) sinc(d)``; the sign follows ``direction``."""
    sign = _check_direction(direction)
    d = np.asarray(d, dtype=float)
    phase = expj_pi(d)
    if sign < 0:
        phase = np.conj(phase)
    return phase * (sinc(d) / math.sqrt(nu))


def discrete_value(d, nu: int, n1: int, direction: str = WIDE_FROM_NARROW):
    """Dirichlet form of the sampled inner product over ``n1`` samples."""
    sign = _check_direction(direction)
    d = np.asarray(d, dtype=float)
    phase = expj_pi(d - d / n1)  # (n1 - 1)/n1 * d
    if sign < 0:
        phase = np.conj(phase)
    return phase * (dirichlet(d, n1) / math.sqrt(nu))


def continuous_magnitude_from_d(d, nu: int):
    return np.abs(sinc(d)) / math.sqrt(nu)


def discrete_magnitude_from_d(d, nu: int, n1: int):
    return np.abs(dirichlet(d, n1)) / math.sqrt(nu)


# -- per-pair operations ------------------------------------------------------

def rho_continuous(pair: NumerologyPair, m: int, n: int,
                   direction: str = WIDE_FROM_NARROW) -> InnerProduct:
    check_indices(pair, m, n)
    d = relative_distance(m, n, pair.nu)
    return InnerProduct(complex(continuous_value(d, pair.nu, direction)), d, CONTINUOUS, direction)


def rho_discrete(pair: NumerologyPair, m: int, n: int,
                 direction: str = WIDE_FROM_NARROW) -> InnerProduct:
    check_indices(pair, m, n)
    d = relative_distance(m, n, pair.nu)
    value = complex(discrete_value(d, pair.nu, pair.n1, direction))
    return InnerProduct(value, d, DISCRETE, direction, n1=pair.n1)


def magnitude_continuous(pair: NumerologyPair, m: int, n: int) -> float:
    check_indices(pair, m, n)
    return float(continuous_magnitude_from_d(relative_distance(m, n, pair.nu), pair.nu))


def magnitude_discrete(pair: NumerologyPair, m: int, n: int) -> float:
    check_indices(pair, m, n)
    return float(discrete_magnitude_from_d(relative_distance(m, n, pair.nu), pair.nu, pair.n1))


# -- discretization factor ----------------------------------------------------

def beta(d, n1: int):
    """Excess of the sampled INI magnitude over the continuous one, ``1/|sinc(d/n1)|``.

    Accepts scalar or array ``d``; every entry must satisfy ``|d| < n1``.
    """
    if n1 < 1:
        raise DomainError(f"n1 must be >= 1, got {n1}")
    d = np.asarray(d, dtype=float)
    if np.any(~np.isfinite(d)) or np.any(np.abs(d) >= n1):
        raise DomainError(f"relative distance must satisfy |d| < n1={n1}")
    out = 1.0 / np.abs(sinc(d / n1))
    return float(out) if out.ndim == 0 else out


def discretization_error_pct(d, n1: int):
    """Percentage by which the sampled magnitude exceeds the continuous one."""
    out = (np.asarray(beta(d, n1)) - 1.0) * 100.0
    return float(out) if out.ndim == 0 else out


def min_samples_for_tolerance(d: float, tol_pct: float, max_n1: int = 2**30) -> int:
    """Smallest power-of-two ``n1`` whose discretization error at ``d`` is within ``tol_pct``."""
    if tol_pct < 0:
        raise DomainError(f"tolerance must be non-negative, got {tol_pct}")
    lo = max(0, math.floor(math.log2(abs(d))) + 1) if d != 0 else 0
    hi = max_n1.bit_length() - 1
    if lo > hi or discretization_error_pct(d, 2**hi) > tol_pct:
        raise DomainError(f"no n1 <= {max_n1} reaches {tol_pct}% at d={d}")
    # beta decreases monotonically in n1, so bisect on the exponent
    while lo < hi:
        mid = (lo + hi) // 2
        if 2**mid > abs(d) and discretization_error_pct(d, 2**mid) <= tol_pct:
            hi = mid
        else:
            lo = mid + 1
    return 2**lo


# -- orthogonality ------------------------------------------------------------

def is_orthogonal(m: int, n: int, nu: int) -> bool:
    """True iff ``m - n/nu`` is a nonzero integer.

    Co-located pairs (``n == m*nu``) are excluded: their inner product has
    magnitude ``1/sqrt(nu)``.
    """
    if nu < 2:
        raise ValidationError(f"nu must be >= 2, got {nu}")
    return n % nu == 0 and n // nu != m


@dataclass(frozen=True)
class OrthogonalSubset:
    name: str
    wide: tuple[int, ...]
    narrow: tuple[int, ...]
    co_located: tuple[tuple[int, int], ...] = ()

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "wide": list(self.wide),
            "narrow": list(self.narrow),
            "co_located": [{"m": m, "n": n} for m, n in self.co_located],
        }


def _certify(pair: NumerologyPair, subset: OrthogonalSubset) -> None:
    if not subset.wide or not subset.narrow:
        return
    m = np.asarray(subset.wide)[:, None]
    n = np.asarray(subset.narrow)[None, :]
    d = relative_distance(m, n, pair.nu)
    excluded = np.zeros(d.shape, dtype=bool)
    wide_pos = {v: i for i, v in enumerate(subset.wide)}
    narrow_pos = {v: j for j, v in enumerate(subset.narrow)}
    for mm, nn in subset.co_located:
        excluded[wide_pos[mm], narrow_pos[nn]] = True
    for mags in (continuous_magnitude_from_d(d, pair.nu),
                 discrete_magnitude_from_d(d, pair.nu, pair.n1)):
        bad = (mags >= ORTHOGONALITY_ATOL) & ~excluded
        if np.any(bad):
            i, j = np.argwhere(bad)[0]
            raise AssertionError(
                f"subset {subset.name!r} not orthogonal at m={subset.wide[i]}, n={subset.narrow[j]}")


def orthogonal_subsets(pair: NumerologyPair) -> list[OrthogonalSubset]:
    """The three orthogonal subsets: all wide, all narrow, and the mixed one.

    The mixed subset holds every wide subcarrier plus the narrow subcarriers
    whose index is a multiple of nu. Each such narrow subcarrier is co-located
    with wide subcarrier ``n/nu`` and those pairs are listed in ``co_located``.
    Every subset is checked exhaustively before being returned.
    """
    if pair.n1 * pair.n2 > MATRIX_CAP:
        raise CapExceeded(f"{pair.n1}x{pair.n2} exceeds certification cap {MATRIX_CAP}")
    wide = tuple(range(pair.n1))
    narrow = tuple(range(pair.n2))
    mixed_narrow = tuple(n for n in narrow if n % pair.nu == 0)
    co_located = tuple((n // pair.nu, n) for n in mixed_narrow if n // pair.nu < pair.n1)
    subsets = [
        OrthogonalSubset("wide", wide, ()),
        OrthogonalSubset("narrow", (), narrow),
        OrthogonalSubset("mixed", wide, mixed_narrow, co_located),
    ]
    for subset in subsets:
        _certify(pair, subset)
    return subsets


# -- full matrices ------------------------------------------------------------

@dataclass(frozen=True)
class IniMatrix:
    """Inner products for every (m, n); ``values[m, n]`` for wide<-narrow,
    ``values[n, m]`` for narrow<-wide."""

    values: np.ndarray
    d: np.ndarray
    kind: str
    direction: str
    n1: int | None = None

    @property
    def magnitudes(self) -> np.ndarray:
        return np.abs(self.values)

    def entry(self, i: int, j: int) -> InnerProduct:
        return InnerProduct(complex(self.values[i, j]), float(self.d[i, j]),
                            self.kind, self.direction, self.n1)

    def ini_power_per_subcarrier(self) -> tuple[np.ndarray, np.ndarray]:
        """(row sums, column sums) of squared magnitudes."""
        power = self.magnitudes**2
        return power.sum(axis=1), power.sum(axis=0)


def ini_matrix(pair: NumerologyPair, mode: str = CONTINUOUS,
               direction: str = WIDE_FROM_NARROW, cap: int = MATRIX_CAP) -> IniMatrix:
    if pair.n1 * pair.n2 > cap:
        raise CapExceeded(f"{pair.n1}x{pair.n2} entries exceed cap {cap}")
    _check_direction(direction)
    m = np.arange(pair.n1)[:, None]
    n = np.arange(pair.n2)[None, :]
    d = relative_distance(m, n, pair.nu)
    if mode == CONTINUOUS:
        values, n1 = continuous_value(d, pair.nu, direction), None
    elif mode == DISCRETE:
        values, n1 = discrete_value(d, pair.nu, pair.n1, direction), pair.n1
    else:
        raise ValidationError(f"unknown mode {mode!r}")
    if direction == NARROW_FROM_WIDE:
        values, d = values.T, d.T
    return IniMatrix(np.ascontiguousarray(values), np.ascontiguousarray(d), mode, direction, n1)


__all__ = [
    "CONTINUOUS", "DISCRETE", "DIRECTIONS", "InnerProduct", "IniMatrix", "MATRIX_CAP",
    "NARROW_FROM_WIDE", "ORACLE_QUADRATURE", "ORACLE_SOE", "OrthogonalSubset",
    "WIDE_FROM_NARROW", "beta", "check_indices", "continuous_magnitude_from_d",
    "continuous_value", "discrete_magnitude_from_d", "discrete_value",
    "discretization_error_pct", "ini_matrix", "is_orthogonal",
    "magnitude_continuous", "magnitude_discrete", "min_samples_for_tolerance",
    "orthogonal_subsets", "relative_distance", "rho_continuous", "rho_discrete",
]
