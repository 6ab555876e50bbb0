"""Restricted product bases for three two-photon cavities.

Each cavity holds a two-level atom whose ground/excited transition absorbs or
emits a photon pair, so the local excitation-counting operator assigns n to
|g,n> and n+2 to |e,n>.  Only even photon numbers occur.  The total count is
conserved, which restricts the dynamics to finite manifolds: dimension 6 for
a total of 2, 18 for 4, 38 for 6.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

N_CAVITIES = 3

EVEN_PERMUTATIONS = ((1, 2, 3), (2, 3, 1), (3, 1, 2))
ALL_PERMUTATIONS = tuple(itertools.permutations((1, 2, 3)))


class UnsupportedProductError(ValueError):
    """A tensor product of cavity states leaks outside the manifold."""


class Excitation(str, Enum):
    GROUND = "g"
    EXCITED = "e"


@dataclass(frozen=True)
class CavityLevel:
    """One cavity's bare level: atomic flag plus a photon-pair count.

    Photon numbers are stored as pair counts, so odd occupations are not
    representable.  The canonical order (ground before excited, then photon
    number) is what `sort_key` encodes; it is used throughout.
    """

    excitation: Excitation
    pairs: int

    def __post_init__(self):
        if self.pairs < 0:
            raise ValueError(f"negative pair count: {self.pairs}")

    @classmethod
    def from_photons(cls, excitation: Excitation | str, photons: int) -> "CavityLevel":
        if photons % 2:
            raise ValueError(f"odd photon number {photons} cannot occur")
        return cls(Excitation(excitation), photons // 2)

    @property
    def photons(self) -> int:
        return 2 * self.pairs

    @property
    def excited(self) -> bool:
        return self.excitation is Excitation.EXCITED

    @property
    def local_total(self) -> int:
        """Eigenvalue of the local conserved counter: n for |g,n>, n+2 for |e,n>."""
        return self.photons + (2 if self.excited else 0)

    def sort_key(self) -> tuple[int, int]:
        return (int(self.excited), self.photons)

    def __str__(self) -> str:
        return f"{self.excitation.value}{self.photons}"


def parse_level(text: str) -> CavityLevel:
    """Parse 'g0', 'e2', ... into a CavityLevel."""
    text = text.strip()
    if len(text) < 2 or text[0] not in ("g", "e") or not text[1:].isdigit():
        raise ValueError(f"cannot parse cavity level {text!r}")
    return CavityLevel.from_photons(text[0], int(text[1:]))


@dataclass(frozen=True)
class BasisState:
    """Ordered triple of cavity levels with a definite total count."""

    levels: tuple[CavityLevel, CavityLevel, CavityLevel]

    @property
    def total(self) -> int:
        return sum(lv.local_total for lv in self.levels)

    @property
    def excited_count(self) -> int:
        return sum(lv.excited for lv in self.levels)

    def sort_key(self):
        """Canonical order: excited-atom count, then lexicographic on the
        (excitation, photons) triple with cavity 1 most significant."""
        return (self.excited_count,) + tuple(
            (int(lv.excited), lv.photons) for lv in self.levels
        )

    def permuted(self, perm: tuple[int, int, int]) -> "BasisState":
        """Image under a cavity relabeling: cavity i's content moves to perm[i]."""
        new = [None, None, None]
        for i, target in enumerate(perm):
            new[target - 1] = self.levels[i]
        return BasisState(tuple(new))

    def __str__(self) -> str:
        return "|" + ",".join(str(lv) for lv in self.levels) + ">"


def _local_levels(n_total: int) -> tuple[CavityLevel, ...]:
    """All single-cavity levels with local count <= n_total, canonically sorted."""
    out = [
        CavityLevel(Excitation.GROUND, k) for k in range(n_total // 2 + 1)
    ] + [
        CavityLevel(Excitation.EXCITED, k) for k in range((n_total - 2) // 2 + 1)
    ]
    return tuple(sorted(out, key=CavityLevel.sort_key))


@dataclass(frozen=True)
class Manifold:
    """Fixed-total subspace spanned by the basis states with that total."""

    n_total: int
    basis: tuple[BasisState, ...]
    index: dict = field(repr=False, hash=False, compare=False)
    sectors: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def levels(self) -> tuple[CavityLevel, ...]:
        """Per-cavity alphabet, shared by all three cavities."""
        return _local_levels(self.n_total)

    @property
    def qudit_dim(self) -> int:
        return len(self.levels)

    def index_of(self, state: BasisState) -> int:
        try:
            return self.index[state]
        except KeyError:
            raise KeyError(f"{state} is not in the total={self.n_total} manifold") from None

    def state_of(self, levels: tuple[str, str, str]) -> BasisState:
        return BasisState(tuple(parse_level(t) for t in levels))


@lru_cache(maxsize=None)
def enumerate_manifold(n_total: int) -> Manifold:
    """Enumerate the fixed-total manifold in canonical order.

    Parameters
    ----------
    n_total : even total of the conserved counter (nonnegative).

    Returns
    -------
    Manifold with basis sorted by (excited-atom count, lexicographic levels)
    and index positions partitioned into sectors by excited-atom count.
    """
    if n_total < 0 or n_total % 2:
        raise ValueError(f"total count must be even and nonnegative, got {n_total}")
    alphabet = _local_levels(n_total)
    states = [
        BasisState(triple)
        for triple in itertools.product(alphabet, repeat=N_CAVITIES)
        if sum(lv.local_total for lv in triple) == n_total
    ]
    states.sort(key=BasisState.sort_key)
    index = {s: i for i, s in enumerate(states)}
    sectors = tuple(
        tuple(i for i, s in enumerate(states) if s.excited_count == k)
        for k in range(N_CAVITIES + 1)
    )
    return Manifold(n_total=n_total, basis=tuple(states), index=index, sectors=sectors)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitudes over a manifold's canonical basis."""

    manifold: Manifold
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.ascontiguousarray(self.amplitudes, dtype=complex)
        if amp.shape != (self.manifold.dim,):
            raise ValueError(
                f"expected {self.manifold.dim} amplitudes, got shape {amp.shape}"
            )
        amp.flags.writeable = False
        object.__setattr__(self, "amplitudes", amp)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def amplitude(self, state: BasisState) -> complex:
        return complex(self.amplitudes[self.manifold.index_of(state)])

    def overlap(self, other: "StateVector") -> complex:
        if other.manifold is not self.manifold:
            raise ValueError("states live on different manifolds")
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def product_state(
    manifold: Manifold,
    factors: list[list[tuple[CavityLevel, complex]]],
) -> StateVector:
    """Tensor product of three normalized single-cavity superpositions.

    Every cross term must carry the manifold's total count; otherwise the
    product is not representable here and an UnsupportedProductError is
    raised.  Each factor must be normalized to 1 within 1e-9.
    """
    if len(factors) != N_CAVITIES:
        raise ValueError(f"need {N_CAVITIES} cavity factors, got {len(factors)}")
    for i, factor in enumerate(factors):
        if not factor:
            raise ValueError(f"cavity {i + 1} factor is empty")
        levels = [lv for lv, _ in factor]
        if len(set(levels)) != len(levels):
            raise ValueError(f"cavity {i + 1} factor repeats a level")
        norm2 = sum(abs(c) ** 2 for _, c in factor)
        if abs(norm2 - 1.0) > 1e-9:
            raise ValueError(
                f"cavity {i + 1} factor has squared norm {norm2!r}, expected 1"
            )
    amplitudes = np.zeros(manifold.dim, dtype=complex)
    for (l1, c1), (l2, c2), (l3, c3) in itertools.product(*factors):
        state = BasisState((l1, l2, l3))
        if state.total != manifold.n_total:
            raise UnsupportedProductError(
                f"cross term {state} has total {state.total}, "
                f"outside the total={manifold.n_total} manifold"
            )
        amplitudes[manifold.index_of(state)] = c1 * c2 * c3
    return StateVector(manifold, amplitudes)


def permute_cavities(state: StateVector, perm: tuple[int, int, int]) -> StateVector:
    """Relabel cavities: amplitude of b moves to the image state b.permuted(perm)."""
    if sorted(perm) != [1, 2, 3]:
        raise ValueError(f"not a permutation of (1, 2, 3): {perm}")
    man = state.manifold
    out = np.zeros(man.dim, dtype=complex)
    for i, b in enumerate(man.basis):
        out[man.index_of(b.permuted(perm))] = state.amplitudes[i]
    return StateVector(man, out)


def permutation_matrix(manifold: Manifold, perm: tuple[int, int, int]) -> np.ndarray:
    """Matrix of the cavity-relabeling operator in the canonical basis."""
    if sorted(perm) != [1, 2, 3]:
        raise ValueError(f"not a permutation of (1, 2, 3): {perm}")
    mat = np.zeros((manifold.dim, manifold.dim))
    for i, b in enumerate(manifold.basis):
        mat[manifold.index_of(b.permuted(perm)), i] = 1.0
    return mat


def symmetrize(state: BasisState, kind: str = "all") -> StateVector:
    """Normalized sum of a basis state's permutation images.

    kind is 'all' (six permutations) or 'even' (the three cyclic ones).
    Coinciding images are merged before normalization, so a fully symmetric
    input comes back with weight 1.
    """
    if kind == "all":
        perms = ALL_PERMUTATIONS
    elif kind == "even":
        perms = EVEN_PERMUTATIONS
    else:
        raise ValueError(f"kind must be 'all' or 'even', got {kind!r}")
    manifold = enumerate_manifold(state.total)
    amplitudes = np.zeros(manifold.dim, dtype=complex)
    for perm in perms:
        amplitudes[manifold.index_of(state.permuted(perm))] += 1.0
    return StateVector(manifold, amplitudes / np.linalg.norm(amplitudes))
