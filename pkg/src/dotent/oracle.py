"""Brute-force cross-check in the fixed-excitation sector.

Deliberately independent of the analytical path: the state is evolved by
dense diagonalization of the hopping matrix and the entanglement comes
from eigenvalues of the reduced density matrix.  Only the integer
primitives are shared with the rest of the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

# Dense sector matrices stay manageable up to C(16, 8) = 12870.
DEFAULT_MAX_DOTS = 16


@dataclass(frozen=True)
class SectorBasis:
    """N-bit configurations with exactly M ones, ascending as integers.

    Site 1 is the most significant bit, so the initial configuration
    (first M sites excited) is the last basis element.
    """

    dots: int
    excitations: int
    states: tuple[int, ...]

    @cached_property
    def _positions(self) -> dict[int, int]:
        return {s: i for i, s in enumerate(self.states)}

    def index_of(self, state: int) -> int:
        return self._positions[state]

    def __len__(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class SectorHamiltonian:
    """Hopping matrix in coupling units: 1 between single-move neighbors."""

    basis: SectorBasis
    matrix: np.ndarray

    @cached_property
    def eigensystem(self) -> tuple[np.ndarray, np.ndarray]:
        """Eigenvalues and orthonormal eigenvectors, computed once."""
        return np.linalg.eigh(self.matrix)


@dataclass(frozen=True)
class SectorState:
    basis: SectorBasis
    amplitudes: np.ndarray


def build_basis(
    dots: int, excitations: int, max_dots: int = DEFAULT_MAX_DOTS
) -> SectorBasis:
    if dots < 1:
        raise ValueError(f"need at least one dot, got {dots}")
    if not 0 <= excitations <= dots:
        raise ValueError(
            f"excitations must lie in 0..{dots}, got {excitations}"
        )
    if dots > max_dots:
        raise ValueError(
            f"sector budget exceeded: {dots} dots > limit {max_dots}"
        )
    states = sorted(
        sum(1 << p for p in chosen)
        for chosen in itertools.combinations(range(dots), excitations)
    )
    return SectorBasis(dots, excitations, tuple(states))


def build_hamiltonian(basis: SectorBasis) -> SectorHamiltonian:
    size = len(basis)
    matrix = np.zeros((size, size))
    for i, state in enumerate(basis.states):
        for src in range(basis.dots):
            if not state >> src & 1:
                continue
            for dst in range(basis.dots):
                if state >> dst & 1:
                    continue
                moved = (state ^ (1 << src)) | (1 << dst)
                matrix[i, basis.index_of(moved)] = 1.0
    matrix.setflags(write=False)
    return SectorHamiltonian(basis, matrix)


def initial_state_index(basis: SectorBasis) -> int:
    """Basis position of the configuration with the first M sites excited."""
    N, M = basis.dots, basis.excitations
    return basis.index_of(((1 << M) - 1) << (N - M))


def evolve(hamiltonian: SectorHamiltonian, kt: float) -> SectorState:
    """State at time kt starting from the first-M-sites-excited configuration."""
    values, vectors = hamiltonian.eigensystem
    start = initial_state_index(hamiltonian.basis)
    phases = np.exp(-1j * values * kt) * vectors[start, :].conj()
    return SectorState(hamiltonian.basis, vectors @ phases)


def reduced_eigenvalues(state: SectorState, cut: int) -> np.ndarray:
    """Ascending eigenvalues of the reduced density matrix of sites 1..cut.

    Only configurations compatible with the sector appear as rows and
    columns, which keeps the matrix small for every split.
    """
    basis = state.basis
    if not 0 <= cut <= basis.dots:
        raise ValueError(f"cut must lie in 0..{basis.dots}, got {cut}")
    shift = basis.dots - cut
    mask = (1 << shift) - 1
    rows: dict[int, int] = {}
    cols: dict[int, int] = {}
    for s in basis.states:
        rows.setdefault(s >> shift, len(rows))
        cols.setdefault(s & mask, len(cols))
    block = np.zeros((len(rows), len(cols)), dtype=complex)
    for s, amp in zip(basis.states, state.amplitudes):
        block[rows[s >> shift], cols[s & mask]] = amp
    density = block @ block.conj().T
    values = np.linalg.eigvalsh(density)
    if values.min() < -1e-12:
        raise ArithmeticError(
            f"reduced density matrix has eigenvalue {values.min()}"
        )
    return np.clip(values, 0.0, None)


def reduced_entropy(state: SectorState, cut: int) -> float:
    """Von Neumann entropy (base 2) of the first `cut` sites."""
    values = reduced_eigenvalues(state, cut)
    positive = values[values > 0.0]
    return float(-(positive * np.log2(positive)).sum() + 0.0)


def oracle_entanglement(
    dots: int, excitations: int, kt: float, max_dots: int = DEFAULT_MAX_DOTS
) -> float:
    """Full pipeline: basis, hopping matrix, evolution, reduced entropy."""
    basis = build_basis(dots, excitations, max_dots)
    hamiltonian = build_hamiltonian(basis)
    return reduced_entropy(evolve(hamiltonian, kt), excitations)
