"""Numerology parameter sets and the two-numerology pairing."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._numeric import is_power_of_two
from .errors import (
    NonIntegralSubcarrierCount,
    OrderViolation,
    RatioNotPowerOfTwo,
    ScalingFactorTooLarge,
    SubcarrierCountNotPowerOfTwo,
    ValidationError,
)

MAX_NU = 2**10

# Relative slack when deciding that a float ratio is an integer.
_INTEGRAL_RTOL = 1e-12


@dataclass(frozen=True)
class Numerology:
    """One OFDM parameter set.

    ``index`` is 1 for the numerology with the wider subcarrier spacing and 2
    for the narrower one.
    """

    index: int
    subcarrier_spacing_hz: float
    symbol_duration_s: float
    num_subcarriers: int

    @classmethod
    def from_spacing(cls, index: int, subcarrier_spacing_hz: float, num_subcarriers: int) -> Numerology:
        return cls(index, float(subcarrier_spacing_hz), 1.0 / subcarrier_spacing_hz, int(num_subcarriers))

    @property
    def sampling_duration_s(self) -> float:
        return self.symbol_duration_s / self.num_subcarriers


@dataclass(frozen=True)
class NumerologyPair:
    wide: Numerology
    narrow: Numerology
    nu: int
    bandwidth_hz: float
    sampling_duration_s: float

    @property
    def mu(self) -> int:
        return self.nu.bit_length() - 1

    @property
    def n1(self) -> int:
        return self.wide.num_subcarriers

    @property
    def n2(self) -> int:
        return self.narrow.num_subcarriers

    def numerology(self, index: int) -> Numerology:
        if index == 1:
            return self.wide
        if index == 2:
            return self.narrow
        raise ValidationError(f"numerology index must be 1 or 2, got {index}")

    def summary(self) -> dict:
        return {
            "bandwidth_hz": self.bandwidth_hz,
            "nu": self.nu,
            "mu": self.mu,
            "sampling_duration_s": self.sampling_duration_s,
            "wide": _numerology_summary(self.wide),
            "narrow": _numerology_summary(self.narrow),
        }


def _numerology_summary(num: Numerology) -> dict:
    return {
        "index": num.index,
        "subcarrier_spacing_hz": num.subcarrier_spacing_hz,
        "symbol_duration_s": num.symbol_duration_s,
        "num_subcarriers": num.num_subcarriers,
    }


def _as_integer(value: float) -> int | None:
    nearest = round(value)
    if nearest >= 1 and abs(value - nearest) <= _INTEGRAL_RTOL * nearest:
        return int(nearest)
    return None


def make_pair(bandwidth_hz: float, delta_f_wide: float, delta_f_narrow: float) -> NumerologyPair:
    """Build a validated numerology pair sharing ``bandwidth_hz``.

    >>> p = make_pair(480e3, 30e3, 15e3)
    >>> p.nu, p.n1, p.n2
    (2, 16, 32)
    """
    for name, value in (("bandwidth_hz", bandwidth_hz), ("delta_f_wide", delta_f_wide),
                        ("delta_f_narrow", delta_f_narrow)):
        if not (math.isfinite(value) and value > 0):
            raise ValidationError(f"{name} must be finite and strictly positive, got {value!r}")
    if delta_f_wide <= delta_f_narrow:
        raise OrderViolation(
            f"wide spacing {delta_f_wide} Hz must exceed narrow spacing {delta_f_narrow} Hz")

    nu = _as_integer(delta_f_wide / delta_f_narrow)
    if nu is None or not is_power_of_two(nu) or nu < 2:
        raise RatioNotPowerOfTwo(
            f"spacing ratio {delta_f_wide / delta_f_narrow!r} is not a power of two >= 2")
    if nu > MAX_NU:
        raise ScalingFactorTooLarge(f"scaling factor {nu} exceeds cap {MAX_NU}")

    counts = []
    for spacing in (delta_f_wide, delta_f_narrow):
        count = _as_integer(bandwidth_hz / spacing)
        if count is None:
            raise NonIntegralSubcarrierCount(
                f"bandwidth {bandwidth_hz} Hz / spacing {spacing} Hz is not a positive integer")
        if not is_power_of_two(count):
            raise SubcarrierCountNotPowerOfTwo(f"subcarrier count {count} is not a power of two")
        counts.append(count)
    n1, n2 = counts
    if n2 != nu * n1:
        raise NonIntegralSubcarrierCount(f"inconsistent subcarrier counts {n1}, {n2} for nu={nu}")

    wide = Numerology.from_spacing(1, delta_f_wide, n1)
    narrow = Numerology.from_spacing(2, delta_f_narrow, n2)
    return NumerologyPair(wide, narrow, nu, float(bandwidth_hz), wide.symbol_duration_s / n1)


def pair_from_counts(nu: int, n1: int, delta_f_narrow: float = 15e3) -> NumerologyPair:
    """Convenience constructor from the dimensionless parameters (nu, N1)."""
    if not isinstance(nu, int) or not isinstance(n1, int):
        raise ValidationError("nu and n1 must be integers")
    if n1 < 1:
        raise ValidationError(f"n1 must be positive, got {n1}")
    delta_f_wide = nu * delta_f_narrow
    return make_pair(n1 * delta_f_wide, delta_f_wide, delta_f_narrow)


def scaling_factor(pair: NumerologyPair) -> int:
    """Return nu; the spacing, duration and count ratios agree by construction."""
    return pair.nu
