"""Discrete-time two-numerology OFDM chain: modulate, multiplex, demodulate.

Symbols are laid out block-aligned on a common sample clock. Narrow symbol
``k`` spans ``nu`` wide symbols ``nu*k .. nu*k + nu - 1``, and wide symbol
``nu*k + q`` sees samples ``q*N1 .. (q+1)*N1 - 1`` of it (segment ``q``).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .core import Numerology, NumerologyPair, pair_from_counts
from .errors import (
    ConfigurationError,
    IndexOutOfRange,
    InsufficientSamples,
    LengthMismatch,
    SampleRateMismatch,
    ValidationError,
)
from .oracle import segment_soe_table

RNG_ALGORITHM = "PCG64"
CONSTELLATIONS = ("qpsk", "16qam", "random")
ALLOCATIONS = ("full", "orthogonal")

_TS_RTOL = 1e-12


@dataclass(frozen=True)
class SymbolGrid:
    numerology: Numerology
    symbols: np.ndarray  # (K, N)

    def __post_init__(self):
        symbols = np.asarray(self.symbols, dtype=complex)
        if symbols.ndim != 2 or symbols.shape[1] != self.numerology.num_subcarriers:
            raise ValidationError(
                f"symbol grid must have shape (K, {self.numerology.num_subcarriers}), got {symbols.shape}")
        if not np.all(np.isfinite(symbols)):
            raise ValidationError("symbol grid contains non-finite values")
        object.__setattr__(self, "symbols", symbols)

    @property
    def num_symbols(self) -> int:
        return self.symbols.shape[0]

    @classmethod
    def zeros(cls, numerology: Numerology, num_symbols: int) -> SymbolGrid:
        return cls(numerology, np.zeros((num_symbols, numerology.num_subcarriers), dtype=complex))


@dataclass(frozen=True)
class SampledSignal:
    sampling_duration_s: float
    samples: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "samples", np.asarray(self.samples, dtype=complex).ravel())


def modulate(grid: SymbolGrid) -> SampledSignal:
    """Block ``k`` holds ``sum_m s[k, m] phi_m[l]``: an orthonormal inverse DFT."""
    blocks = np.fft.ifft(grid.symbols, axis=1, norm="ortho")
    return SampledSignal(grid.numerology.sampling_duration_s, blocks.ravel())


def multiplex(sig_wide: SampledSignal, sig_narrow: SampledSignal) -> SampledSignal:
    if not math.isclose(sig_wide.sampling_duration_s, sig_narrow.sampling_duration_s,
                        rel_tol=_TS_RTOL, abs_tol=0.0):
        raise SampleRateMismatch(
            f"sampling durations differ: {sig_wide.sampling_duration_s} vs {sig_narrow.sampling_duration_s}")
    if sig_wide.samples.size != sig_narrow.samples.size:
        raise LengthMismatch(f"signal lengths differ: {sig_wide.samples.size} vs {sig_narrow.samples.size}")
    return SampledSignal(sig_wide.sampling_duration_s, sig_wide.samples + sig_narrow.samples)


def demodulate(signal: SampledSignal, numerology: Numerology, num_symbols: int) -> SymbolGrid:
    """Correlate each block against every ``phi_m``: an orthonormal forward DFT."""
    n = numerology.num_subcarriers
    if signal.samples.size < num_symbols * n:
        raise InsufficientSamples(f"need {num_symbols * n} samples, have {signal.samples.size}")
    blocks = signal.samples[: num_symbols * n].reshape(num_symbols, n)
    return SymbolGrid(numerology, np.fft.fft(blocks, axis=1, norm="ortho"))


# -- INI prediction ------------------------------------------------------------

def _victim_index(pair: NumerologyPair, victim: Numerology) -> int:
    if victim == pair.wide:
        return 1
    if victim == pair.narrow:
        return 2
    raise ConfigurationError("victim numerology is not part of the pair")


def predict_ini_grid(pair: NumerologyPair, interferer_grid: SymbolGrid, victim: Numerology,
                     segments: np.ndarray | None = None) -> np.ndarray:
    """Predicted INI on every victim (symbol, subcarrier) from the other numerology's grid."""
    if segments is None:
        segments = segment_soe_table(pair)
    s = interferer_grid.symbols
    if _victim_index(pair, victim) == 1:
        if interferer_grid.numerology != pair.narrow:
            raise ConfigurationError("a wide victim needs a narrow interferer grid")
        k1 = np.arange(pair.nu * s.shape[0])
        # ini[k, m] = sum_n segments[k % nu, m, n] * s2[k // nu, n]
        return np.einsum("kmn,kn->km", segments[k1 % pair.nu], s[k1 // pair.nu])
    if interferer_grid.numerology != pair.wide:
        raise ConfigurationError("a narrow victim needs a wide interferer grid")
    if s.shape[0] % pair.nu:
        raise ConfigurationError(f"wide symbol count {s.shape[0]} is not a multiple of nu={pair.nu}")
    s1 = s.reshape(-1, pair.nu, pair.n1)  # [k2, q, m]
    return np.einsum("kqm,qmn->kn", s1, np.conj(segments))


def predict_ini(pair: NumerologyPair, interferer_grid: SymbolGrid, victim: Numerology,
                k: int, m: int, segments: np.ndarray | None = None) -> complex:
    """Predicted INI at victim symbol ``k``, subcarrier ``m``."""
    if segments is None:
        segments = segment_soe_table(pair)
    s = interferer_grid.symbols
    if _victim_index(pair, victim) == 1:
        if interferer_grid.numerology != pair.narrow:
            raise ConfigurationError("a wide victim needs a narrow interferer grid")
        if not 0 <= m < pair.n1 or not 0 <= k < pair.nu * s.shape[0]:
            raise IndexOutOfRange(f"victim position ({k}, {m}) out of range")
        return complex(segments[k % pair.nu, m] @ s[k // pair.nu])
    if interferer_grid.numerology != pair.wide:
        raise ConfigurationError("a narrow victim needs a wide interferer grid")
    if not 0 <= m < pair.n2 or not 0 <= k < s.shape[0] // pair.nu:
        raise IndexOutOfRange(f"victim position ({k}, {m}) out of range")
    block = s[pair.nu * k: pair.nu * (k + 1)]  # [q, m']
    return complex(np.sum(block * np.conj(segments[:, :, m])))


# -- experiments --------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentConfig:
    """One simulation run over ``num_symbols`` narrow symbols (``nu`` times as many wide).

    ``allocation="full"`` loads every subcarrier of both numerologies.
    ``allocation="orthogonal"`` splits the band into two halves: the wide
    numerology uses subcarriers ``m < N1/2`` and the narrow one uses the
    multiples of ``nu`` in the upper half, which are orthogonal to every
    loaded wide subcarrier.
    """

    nu: int
    n1: int
    num_symbols: int
    constellation: str = "qpsk"
    seed: int = 0
    allocation: str = "full"
    rng: str = RNG_ALGORITHM

    def __post_init__(self):
        if self.constellation not in CONSTELLATIONS:
            raise ConfigurationError(f"constellation must be one of {CONSTELLATIONS}")
        if self.allocation not in ALLOCATIONS:
            raise ConfigurationError(f"allocation must be one of {ALLOCATIONS}")
        if self.rng != RNG_ALGORITHM:
            raise ConfigurationError(f"only the {RNG_ALGORITHM} generator is supported")
        if self.num_symbols < 1:
            raise ConfigurationError("num_symbols must be positive")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError("seed must be an unsigned 64-bit integer")
        if self.allocation == "orthogonal" and self.n1 < 2:
            raise ConfigurationError("orthogonal allocation needs n1 >= 2")

    def pair(self) -> NumerologyPair:
        return pair_from_counts(self.nu, self.n1)


def constellation_symbols(name: str, rng: np.random.Generator, shape) -> np.ndarray:
    """Unit average energy symbols."""
    if name == "qpsk":
        bits = rng.integers(0, 2, size=(2, *shape))
        return ((2 * bits[0] - 1) + 1j * (2 * bits[1] - 1)) / math.sqrt(2)
    if name == "16qam":
        levels = rng.integers(0, 4, size=(2, *shape)) * 2 - 3
        return (levels[0] + 1j * levels[1]) / math.sqrt(10)
    if name == "random":
        return np.exp(2j * np.pi * rng.random(shape))
    raise ConfigurationError(f"unknown constellation {name!r}")


def allocation_masks(pair: NumerologyPair, allocation: str) -> tuple[np.ndarray, np.ndarray]:
    wide = np.ones(pair.n1, dtype=bool)
    narrow = np.ones(pair.n2, dtype=bool)
    if allocation == "orthogonal":
        half = pair.n1 // 2
        wide[half:] = False
        n = np.arange(pair.n2)
        narrow = (n % pair.nu == 0) & (n // pair.nu >= half)
    elif allocation != "full":
        raise ConfigurationError(f"unknown allocation {allocation!r}")
    return wide, narrow


@dataclass
class IniReport:
    config: ExperimentConfig
    wide_active: np.ndarray
    narrow_active: np.ndarray
    predicted_wide: np.ndarray  # (K1, N1) complex
    measured_wide: np.ndarray
    predicted_narrow: np.ndarray  # (K2, N2) complex
    measured_narrow: np.ndarray
    expected_power_wide: np.ndarray  # (N1,)
    expected_power_narrow: np.ndarray  # (N2,)
    measured_power_wide: np.ndarray = field(init=False)
    measured_power_narrow: np.ndarray = field(init=False)
    max_prediction_error: float = field(init=False)

    def __post_init__(self):
        self.measured_power_wide = np.mean(np.abs(self.measured_wide) ** 2, axis=0)
        self.measured_power_narrow = np.mean(np.abs(self.measured_narrow) ** 2, axis=0)
        self.max_prediction_error = float(max(
            np.max(np.abs(self.predicted_wide - self.measured_wide)),
            np.max(np.abs(self.predicted_narrow - self.measured_narrow)),
        ))

    def measured_power_stderr(self, numerology_index: int) -> np.ndarray:
        measured = self.measured_wide if numerology_index == 1 else self.measured_narrow
        power = np.abs(measured) ** 2
        return np.std(power, axis=0, ddof=1) / math.sqrt(power.shape[0])

    def wide_victim_power(self) -> float:
        """Mean measured INI power over the loaded wide subcarriers."""
        return float(np.mean(self.measured_power_wide[self.wide_active]))

    def as_dict(self) -> dict:
        rows = []
        for index, expected, measured in (
            (1, self.expected_power_wide, self.measured_power_wide),
            (2, self.expected_power_narrow, self.measured_power_narrow),
        ):
            for sub, (p, q) in enumerate(zip(expected.tolist(), measured.tolist())):
                rows.append({"numerology": index, "m": sub, "predicted_power": p, "measured_power": q})
        return {
            "config": asdict(self.config),
            "per_subcarrier": rows,
            "max_prediction_error": self.max_prediction_error,
            "seed": self.config.seed,
        }


def run_experiment(config: ExperimentConfig) -> IniReport:
    """Simulate both numerologies together and compare measured INI with its prediction.

    ``predicted_power`` in the report is the ensemble expectation
    ``sum_n |rho|^2`` over the loaded interferers (unit symbol energy);
    ``max_prediction_error`` compares per-symbol predictions.
    """
    pair = config.pair()
    rng = np.random.Generator(np.random.PCG64(config.seed))
    k2 = config.num_symbols
    k1 = pair.nu * k2
    wide_active, narrow_active = allocation_masks(pair, config.allocation)

    wide_symbols = constellation_symbols(config.constellation, rng, (k1, pair.n1)) * wide_active
    narrow_symbols = constellation_symbols(config.constellation, rng, (k2, pair.n2)) * narrow_active
    wide_grid = SymbolGrid(pair.wide, wide_symbols)
    narrow_grid = SymbolGrid(pair.narrow, narrow_symbols)

    received = multiplex(modulate(wide_grid), modulate(narrow_grid))
    measured_wide = demodulate(received, pair.wide, k1).symbols - wide_grid.symbols
    measured_narrow = demodulate(received, pair.narrow, k2).symbols - narrow_grid.symbols

    segments = segment_soe_table(pair)
    predicted_wide = predict_ini_grid(pair, narrow_grid, pair.wide, segments)
    predicted_narrow = predict_ini_grid(pair, wide_grid, pair.narrow, segments)

    # |segment| is the same for every q, so segment 0 carries the power
    power = np.abs(segments[0]) ** 2
    expected_wide = power @ narrow_active.astype(float)
    expected_narrow = pair.nu * (wide_active.astype(float) @ power)

    return IniReport(config, wide_active, narrow_active, predicted_wide, measured_wide,
                     predicted_narrow, measured_narrow, expected_wide, expected_narrow)
