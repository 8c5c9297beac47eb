"""Normalized rectangular-pulse subcarriers, continuous and sampled."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._numeric import cospi, sinpi
from .core import Numerology
from .errors import IndexOutOfRange


@dataclass(frozen=True)
class SubcarrierRef:
    numerology: Numerology
    m: int

    def __post_init__(self):
        if not 0 <= self.m < self.numerology.num_subcarriers:
            raise IndexOutOfRange(
                f"subcarrier {self.m} outside [0, {self.numerology.num_subcarriers - 1}] "
                f"for numerology {self.numerology.index}")


def pulse_continuous(sc: SubcarrierRef, t):
    """Evaluate ``exp(j 2 pi m t / T) / sqrt(T)`` on ``0 <= t <= T``, zero elsewhere.

    ``t`` may be a scalar or an array of times in seconds.
    """
    out = continuous_pulse_values(sc.numerology, sc.m, t)
    return out[()] if out.ndim == 0 else out


def continuous_pulse_values(numerology: Numerology, m, t) -> np.ndarray:
    """Broadcasting form of :func:`pulse_continuous` over index and time arrays."""
    period = numerology.symbol_duration_s
    t = np.asarray(t, dtype=float)
    cycles = np.asarray(m) * (t / period)
    frac = cycles - np.floor(cycles)
    value = (cospi(2.0 * frac) + 1j * sinpi(2.0 * frac)) / np.sqrt(period)
    inside = (t >= 0.0) & (t <= period)
    return np.where(inside, value, 0.0 + 0.0j)


def _discrete_angle_fraction(m, l, n):
    # ((m*l) mod n) / n, exact in integer arithmetic
    return np.mod(np.multiply(m, l, dtype=np.int64), n) / n


def pulse_discrete(sc: SubcarrierRef, l):
    """Sample ``l`` of ``exp(j 2 pi m l / N) / sqrt(N)``, ``0 <= l < N``."""
    n = sc.numerology.num_subcarriers
    l_arr = np.asarray(l)
    if l_arr.dtype.kind not in "iu":
        raise IndexOutOfRange(f"sample index must be integer, got {l!r}")
    if np.any((l_arr < 0) | (l_arr >= n)):
        raise IndexOutOfRange(f"sample index outside [0, {n - 1}]")
    frac = _discrete_angle_fraction(sc.m, l_arr, n)
    out = (cospi(2.0 * frac) + 1j * sinpi(2.0 * frac)) / np.sqrt(n)
    return out[()] if out.ndim == 0 else out


def discrete_basis_matrix(numerology: Numerology, num_samples: int | None = None) -> np.ndarray:
    """Matrix ``B[l, m] = phi_m[l]`` for all subcarriers of ``numerology``.

    ``num_samples`` truncates the rows (l < num_samples <= N).
    """
    n = numerology.num_subcarriers
    rows = n if num_samples is None else num_samples
    if not 0 < rows <= n:
        raise IndexOutOfRange(f"num_samples {rows} outside [1, {n}]")
    l = np.arange(rows, dtype=np.int64)[:, None]
    m = np.arange(n, dtype=np.int64)[None, :]
    frac = _discrete_angle_fraction(m, l, n)
    return (cospi(2.0 * frac) + 1j * sinpi(2.0 * frac)) / np.sqrt(n)
