"""Exact time evolution by spectral decomposition.

The manifolds are small (dimension <= 38), so the propagator is always the
exact exp(-i M t) built from one Hermitian eigendecomposition; there is no
step-based integration and no accumulation of local error.  Frequencies are
reported in the same dimensionless units as the generator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import Manifold, StateVector
from .dynamics import Block, Generator


class NumericalContractError(ArithmeticError):
    """An exact-arithmetic guarantee (norm or Hermiticity) was violated."""


NORM_TOL = 1e-10


def _matrix_of(generator) -> np.ndarray:
    if isinstance(generator, np.ndarray):
        return generator
    return generator.matrix


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigendecomposition M = V diag(frequencies) V^dag of a generator."""

    frequencies: np.ndarray
    modes: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.frequencies)


def spectrum(generator: Generator | Block | np.ndarray) -> Spectrum:
    """Eigenfrequencies (ascending) and orthonormal modes of a generator."""
    mat = _matrix_of(generator)
    freqs, modes = np.linalg.eigh(mat)
    return Spectrum(frequencies=freqs, modes=modes)


def eigenfrequencies(generator: Generator | Block | np.ndarray) -> np.ndarray:
    """Sorted eigenfrequencies of a generator or block."""
    return spectrum(generator).frequencies


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Amplitudes sampled along an exact evolution."""

    manifold: Manifold
    generator: Generator
    times: np.ndarray
    times_are_phase: bool
    amplitudes: np.ndarray

    @property
    def n_times(self) -> int:
        return len(self.times)

    def state(self, k: int) -> StateVector:
        return StateVector(self.manifold, self.amplitudes[k])

    def phases(self) -> np.ndarray:
        """Times expressed as the dimensionless product xi*t."""
        if self.times_are_phase:
            return self.times
        return self.times * self.generator.xi


def propagate(generator: Generator, initial: StateVector, times,
              times_are_phase: bool = False) -> Trajectory:
    """Evolve an initial state to the given times, exactly.

    times are physical (in the generator's time unit) unless
    times_are_phase is set, in which case they are read as xi*t and the
    hopping strength drops out of the large-hopping dynamics entirely.

    Raises NumericalContractError if any evolved norm drifts beyond 1e-10.
    """
    if initial.manifold is not generator.manifold:
        raise ValueError("initial state lives on a different manifold")
    if abs(initial.norm - 1.0) > 1e-9:
        raise ValueError(f"initial state is not normalized: |psi| = {initial.norm!r}")
    times = np.atleast_1d(np.asarray(times, dtype=float))
    # The generator matrix carries the factor of xi itself, so exp(-i M t)
    # wants physical times; phase inputs xi*t are divided back down.
    scaled = times / generator.xi if times_are_phase else times
    spec = spectrum(generator)
    coeffs = spec.modes.conj().T @ initial.amplitudes
    osc = np.exp(-1j * scaled[:, None] * spec.frequencies[None, :])
    amplitudes = (osc * coeffs[None, :]) @ spec.modes.T
    norms = np.linalg.norm(amplitudes, axis=1)
    worst = float(np.max(np.abs(norms - 1.0)))
    if worst > NORM_TOL:
        raise NumericalContractError(f"norm drifted by {worst:.3e} during evolution")
    return Trajectory(manifold=generator.manifold, generator=generator,
                      times=times, times_are_phase=times_are_phase,
                      amplitudes=amplitudes)


def evolve_block(block: Block, initial: np.ndarray, phases) -> np.ndarray:
    """Evolve block coordinates through exp(-i M_block * phase)."""
    phases = np.atleast_1d(np.asarray(phases, dtype=float))
    spec = spectrum(block)
    coeffs = spec.modes.conj().T @ np.asarray(initial, dtype=complex)
    osc = np.exp(-1j * phases[:, None] * spec.frequencies[None, :])
    return (osc * coeffs[None, :]) @ spec.modes.T


def sector_probabilities(trajectory: Trajectory, by: str = "count") -> dict:
    """Total probability per excitation sector along a trajectory.

    by='count' groups basis states by how many atoms are excited (the four
    sectors); by='pattern' groups by which cavities are excited, the finer
    partition that the pair exchange also conserves.
    """
    man = trajectory.manifold
    probs = np.abs(trajectory.amplitudes) ** 2
    if by == "count":
        return {
            k: probs[:, idx].sum(axis=1)
            for k, idx in enumerate(man.sectors)
            if idx
        }
    if by == "pattern":
        groups: dict = {}
        for i, b in enumerate(man.basis):
            pattern = tuple(c + 1 for c, lv in enumerate(b.levels) if lv.excited)
            groups.setdefault(pattern, []).append(i)
        return {pat: probs[:, idx].sum(axis=1) for pat, idx in sorted(groups.items())}
    raise ValueError(f"by must be 'count' or 'pattern', got {by!r}")


def mode_expansion(generator: Generator | Block | np.ndarray,
                   initial: np.ndarray) -> list[list[tuple[complex, float]]]:
    """Exact exponential-sum form of every amplitude.

    Returns, for each row index i, the list of (coefficient, mu) pairs such
    that amplitude_i(phase) = sum coef * exp(1i * mu * phase).  mu = -freq,
    matching the sign convention of the closed-form families.  Modes with
    negligible coefficient are dropped; degenerate frequencies are merged.
    """
    spec = spectrum(_matrix_of(generator))
    coeffs = spec.modes.conj().T @ np.asarray(initial, dtype=complex)
    weights = spec.modes * coeffs[None, :]
    out = []
    for i in range(spec.dim):
        terms: list[tuple[complex, float]] = []
        for k in range(spec.dim):
            c = weights[i, k]
            if abs(c) < 1e-14:
                continue
            mu = -float(spec.frequencies[k])
            for t, (c0, mu0) in enumerate(terms):
                if abs(mu0 - mu) < 1e-9:
                    terms[t] = (c0 + c, mu0)
                    break
            else:
                terms.append((complex(c), mu))
        out.append([(c, mu) for c, mu in terms if abs(c) > 1e-14])
    return out
