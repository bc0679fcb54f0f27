"""Analytical Schmidt spectra for the equivalent-neighbor spin model.

N dots interact through a uniform exchange coupling; the initial state has
the first M dots excited.  Time is the dimensionless product kt of that
coupling and physical time.  The superposition amplitudes are carried as
exact rationals (the mixing matrix suffers heavy cancellation in floats)
and floating point enters only in the final trigonometric evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .combinatorics import binomial, double_factorial

# Schmidt weights of a valid table sum to 1 up to rounding; a larger drift
# means the table itself is broken, not the caller's input.
SPECTRUM_SUM_TOL = 1e-9


class NormalizationError(ArithmeticError):
    """Schmidt weights failed to sum to 1: the amplitude data is corrupt."""


@dataclass(frozen=True)
class ModelConfig:
    """System size and excitation count: N dots, the first M excited."""

    dots: int
    excitations: int

    def __post_init__(self):
        if self.dots < 1:
            raise ValueError(f"need at least one dot, got {self.dots}")
        if not 0 <= self.excitations <= self.dots:
            raise ValueError(
                f"excitations must lie in 0..{self.dots}, got {self.excitations}"
            )

    @property
    def m_prime(self) -> int:
        """Largest Schmidt index: min(M, N - M)."""
        return min(self.excitations, self.dots - self.excitations)


@dataclass(frozen=True)
class AmplitudeTable:
    """Exact time-independent data for one (N, M).

    The coefficient of Schmidt branch m is a superposition of harmonics:
    sum over n of amplitudes[n][m] * exp(i * phase_multipliers[n] * kt).
    Both indices run over 0..m_prime.
    """

    config: ModelConfig
    amplitudes: tuple[tuple[Fraction, ...], ...]
    phase_multipliers: tuple[int, ...]


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Schmidt weights of the excited block at one instant."""

    time: float
    weights: tuple[float, ...]


@dataclass(frozen=True)
class EntanglementTrace:
    config: ModelConfig
    times: tuple[float, ...]
    entropies: tuple[float, ...]
    spectra: tuple[SchmidtSpectrum, ...]


def amplitude_table(config: ModelConfig) -> AmplitudeTable:
    """Build the exact mixing matrix and integer phase multipliers.

    Construction is validated against the t = 0 product state: column m
    must sum to 1 for m = 0 and to 0 otherwise, exactly.
    """
    N, M = config.dots, config.excitations
    top = config.m_prime
    rows = []
    for n in range(top + 1):
        row = []
        for m in range(top + 1):
            acc = Fraction(0)
            for k in range(m + 1):
                bracket = binomial(N + 1 - 2 * k, n - k) - 2 * binomial(
                    N - 2 * k, n - k - 1
                )
                acc += Fraction(
                    (-1) ** k * binomial(m, k) * bracket,
                    binomial(N - 2 * k, M - k),
                )
            row.append(acc)
        rows.append(tuple(row))
    multipliers = tuple(n * (N + 1 - n) - M * (N - M) for n in range(top + 1))
    table = AmplitudeTable(config, tuple(rows), multipliers)
    for m in range(top + 1):
        column_sum = sum(row[m] for row in table.amplitudes)
        if column_sum != (1 if m == 0 else 0):
            raise NormalizationError(
                f"initial condition violated in column {m}: sum {column_sum}"
            )
    return table


def _float_table(table: AmplitudeTable) -> tuple[np.ndarray, np.ndarray]:
    mix = np.array(
        [[float(v) for v in row] for row in table.amplitudes], dtype=float
    )
    mult = np.array(table.phase_multipliers, dtype=float)
    return mix, mult


def schmidt_weight_factors(config: ModelConfig) -> np.ndarray:
    """Degeneracy prefactors C(M, m) * C(N - M, m) of the Schmidt branches."""
    N, M = config.dots, config.excitations
    return np.array(
        [binomial(M, m) * binomial(N - M, m) for m in range(config.m_prime + 1)],
        dtype=float,
    )


def coefficients(table: AmplitudeTable, kt: float) -> np.ndarray:
    """Complex branch coefficients at time kt, in double precision."""
    mix, mult = _float_table(table)
    return np.exp(1j * mult * kt) @ mix


def spectrum_curve(table: AmplitudeTable, kts) -> np.ndarray:
    """Schmidt weights for every time in kts; row i belongs to kts[i]."""
    mix, mult = _float_table(table)
    kts = np.atleast_1d(np.asarray(kts, dtype=float))
    coeff = np.exp(1j * np.outer(kts, mult)) @ mix
    return schmidt_weight_factors(table.config) * np.abs(coeff) ** 2


def entropy_curve(table: AmplitudeTable, kts) -> np.ndarray:
    """Entanglement entropy (base 2) for every time in kts."""
    weights = spectrum_curve(table, kts)
    safe = np.where(weights > 0.0, weights, 1.0)
    return -np.sum(weights * np.log2(safe), axis=1) + 0.0


def schmidt_spectrum(table: AmplitudeTable, kt: float) -> SchmidtSpectrum:
    weights = spectrum_curve(table, [kt])[0]
    total = float(weights.sum())
    if abs(total - 1.0) > SPECTRUM_SUM_TOL:
        raise NormalizationError(
            f"Schmidt weights sum to {total!r} at kt={kt!r}"
        )
    return SchmidtSpectrum(time=float(kt), weights=tuple(float(w) for w in weights))


def entanglement(spectrum: SchmidtSpectrum) -> float:
    """Shannon entropy (base 2) of the Schmidt weights, with 0 log 0 = 0."""
    weights = np.asarray(spectrum.weights, dtype=float)
    positive = weights[weights > 0.0]
    return float(-(positive * np.log2(positive)).sum() + 0.0)


def trace_entanglement(config: ModelConfig, kts) -> EntanglementTrace:
    """Spectra and entropies along a time grid, sharing one table build."""
    table = amplitude_table(config)
    kts = np.atleast_1d(np.asarray(kts, dtype=float))
    weights = spectrum_curve(table, kts)
    safe = np.where(weights > 0.0, weights, 1.0)
    entropies = -np.sum(weights * np.log2(safe), axis=1) + 0.0
    spectra = tuple(
        SchmidtSpectrum(time=float(t), weights=tuple(float(w) for w in row))
        for t, row in zip(kts, weights)
    )
    return EntanglementTrace(
        config=config,
        times=tuple(float(t) for t in kts),
        entropies=tuple(float(e) for e in entropies),
        spectra=spectra,
    )


def mes_entropy(config: ModelConfig) -> float:
    """Entropy of the maximally entangled state reachable from this start."""
    return math.log2(config.m_prime + 1)


def relative_entanglement(entropy: float, config: ModelConfig) -> float:
    if config.m_prime == 0:
        raise ValueError("relative entanglement undefined when min(M, N-M) = 0")
    return entropy / mes_entropy(config)


def p1_single_excitation(dots: int, kt: float) -> float:
    """Weight of the transferred branch for a single initial excitation."""
    if dots < 2:
        raise ValueError(f"need at least two dots, got {dots}")
    return 4.0 * (dots - 1) / dots**2 * math.sin(0.5 * dots * kt) ** 2


def entanglement_rate_m1(dots: int, kt: float) -> float:
    """d(entropy)/d(kt) for a single initial excitation.

    The analytical form is an indeterminate 0 * inf product wherever the
    branch weight vanishes (kt a multiple of 2 pi / N) and wherever it
    reaches 1; the true limit is 0 at all of those points.
    """
    if dots < 2:
        raise ValueError(f"need at least two dots, got {dots}")
    s2 = math.sin(0.5 * dots * kt) ** 2
    if s2 == 0.0:
        return 0.0
    odds = dots * dots / (4.0 * (dots - 1.0) * s2) - 1.0
    if odds <= 0.0:
        return 0.0
    return 2.0 * (dots - 1.0) / dots * math.sin(dots * kt) * math.log2(odds)


def mes_time_m1(dots: int) -> float | None:
    """Earliest time a single excitation reaches the two-branch MES.

    None when no real solution exists (dot counts above six never split
    the weight evenly).
    """
    if dots < 2:
        raise ValueError(f"need at least two dots, got {dots}")
    x = 2.0 * math.sqrt(2.0 * (dots - 1.0)) / dots
    if x < 1.0:
        return None
    return 2.0 / dots * math.asin(1.0 / x)


def peak_entropy_m1(dots: int) -> float:
    """Entropy of a single excitation at the half-period time pi / N.

    For two dots the (N - 2)^2 log(N - 2) term is read as 0 log 0 = 0.
    """
    if dots < 2:
        raise ValueError(f"need at least two dots, got {dots}")
    total = dots * dots * math.log2(dots) - 2.0 * (dots - 1.0) * math.log2(
        4.0 * (dots - 1.0)
    )
    if dots > 2:
        total -= (dots - 2.0) ** 2 * math.log2(dots - 2.0)
    return 2.0 / dots**2 * total


def pi_time_magnitudes_exact(config: ModelConfig) -> tuple[Fraction, ...]:
    """Exact branch magnitudes at kt = pi for odd N, M <= (N - 1) / 2.

    |coefficient of branch m| collapses to the rational
    2^m m! (N - 2M) (N - 2m - 2)!! / N!! at that instant.
    """
    N, M = config.dots, config.excitations
    if N % 2 == 0:
        raise ValueError(f"defined for odd dot counts only, got {N}")
    if M > (N - 1) // 2:
        raise ValueError(
            f"excitations must not exceed (N - 1) / 2 = {(N - 1) // 2}, got {M}"
        )
    denom = double_factorial(N)
    return tuple(
        Fraction(
            2**m * math.factorial(m) * (N - 2 * M) * double_factorial(N - 2 * m - 2),
            denom,
        )
        for m in range(config.m_prime + 1)
    )


def pi_time_magnitudes(config: ModelConfig) -> np.ndarray:
    return np.array([float(v) for v in pi_time_magnitudes_exact(config)])
