"""Restricted-basis enumeration, product states, and cavity relabeling."""

import numpy as np
import pytest

from trimodal.basis import (
    ALL_PERMUTATIONS,
    BasisState,
    CavityLevel,
    Excitation,
    StateVector,
    UnsupportedProductError,
    enumerate_manifold,
    parse_level,
    permutation_matrix,
    permute_cavities,
    product_state,
    symmetrize,
)


def lv(text):
    return parse_level(text)


def state(*levels):
    return BasisState(tuple(parse_level(t) for t in levels))


# ---------------------------------------------------------------- enumeration

@pytest.mark.parametrize("n_total, dim", [(0, 1), (2, 6), (4, 18), (6, 38)])
def test_manifold_dimensions(n_total, dim):
    assert enumerate_manifold(n_total).dim == dim


@pytest.mark.parametrize("n_total, alphabet", [(2, 3), (4, 5), (6, 7)])
def test_per_cavity_alphabet(n_total, alphabet):
    man = enumerate_manifold(n_total)
    assert man.qudit_dim == alphabet
    assert len(man.levels) == alphabet


def test_alphabet_canonical_order():
    # ground levels by photon number, then excited levels by photon number
    assert [str(l) for l in enumerate_manifold(4).levels] == \
        ["g0", "g2", "g4", "e0", "e2"]


def test_sector_sizes_total_six():
    man = enumerate_manifold(6)
    assert tuple(len(s) for s in man.sectors) == (10, 18, 9, 1)


def test_sectors_partition_basis():
    for n_total in (2, 4, 6):
        man = enumerate_manifold(n_total)
        flat = [i for sector in man.sectors for i in sector]
        assert sorted(flat) == list(range(man.dim))
        for k, sector in enumerate(man.sectors):
            assert all(man.basis[i].excited_count == k for i in sector)


def test_canonical_order_total_two():
    man = enumerate_manifold(2)
    assert [str(b) for b in man.basis] == [
        "|g0,g0,g2>", "|g0,g2,g0>", "|g2,g0,g0>",
        "|g0,g0,e0>", "|g0,e0,g0>", "|e0,g0,g0>",
    ]


def test_every_basis_state_carries_the_total():
    for n_total in (2, 4, 6):
        man = enumerate_manifold(n_total)
        assert all(b.total == n_total for b in man.basis)


def test_index_roundtrip_and_missing_state():
    man = enumerate_manifold(4)
    for i, b in enumerate(man.basis):
        assert man.index_of(b) == i
    with pytest.raises(KeyError):
        man.index_of(state("g2", "g0", "g0"))  # total 2, wrong manifold


@pytest.mark.parametrize("bad", [-2, 3, 5])
def test_odd_or_negative_totals_rejected(bad):
    with pytest.raises(ValueError):
        enumerate_manifold(bad)


# ---------------------------------------------------------------- levels

def test_parse_level_roundtrip():
    for text in ("g0", "g2", "g4", "g6", "e0", "e2", "e4"):
        assert str(parse_level(text)) == text


@pytest.mark.parametrize("bad", ["", "g", "x2", "g-2", "g2.5", "2g", "eg2"])
def test_parse_level_rejects_garbage(bad):
    with pytest.raises(ValueError):
        parse_level(bad)


def test_odd_photon_numbers_are_unrepresentable():
    with pytest.raises(ValueError):
        parse_level("g3")
    with pytest.raises(ValueError):
        CavityLevel.from_photons("g", 1)


def test_local_count_includes_the_stored_pair():
    # an excited atom holds one absorbed pair: |e,n> counts n + 2
    assert lv("g4").local_total == 4
    assert lv("e2").local_total == 4
    assert lv("e0").local_total == 2
    assert lv("e2").photons == 2
    assert lv("e2").excited and not lv("g4").excited
    assert lv("g0").excitation is Excitation.GROUND


# ---------------------------------------------------------------- vectors

def test_state_vector_shape_and_immutability():
    man = enumerate_manifold(2)
    with pytest.raises(ValueError):
        StateVector(man, np.zeros(5, dtype=complex))
    vec = StateVector(man, np.eye(6)[0])
    with pytest.raises(ValueError):
        vec.amplitudes[0] = 0.0
    assert vec.norm == pytest.approx(1.0)
    assert vec.amplitude(man.basis[0]) == 1.0 + 0.0j


def test_overlap_requires_shared_manifold():
    v2 = StateVector(enumerate_manifold(2), np.eye(6)[0])
    v4 = StateVector(enumerate_manifold(4), np.eye(18)[0])
    with pytest.raises(ValueError):
        v2.overlap(v4)
    assert v2.overlap(v2) == pytest.approx(1.0)


# ---------------------------------------------------------------- products

def test_product_state_basis_case():
    man = enumerate_manifold(2)
    vec = product_state(man, [[(lv("g2"), 1.0)], [(lv("g0"), 1.0)], [(lv("g0"), 1.0)]])
    assert vec.amplitude(state("g2", "g0", "g0")) == pytest.approx(1.0)
    assert vec.norm == pytest.approx(1.0)


def test_product_state_superposed_factor():
    man = enumerate_manifold(2)
    c = 1.0 / np.sqrt(2.0)
    vec = product_state(
        man,
        [[(lv("g2"), c), (lv("e0"), 1j * c)], [(lv("g0"), 1.0)], [(lv("g0"), 1.0)]],
    )
    assert vec.amplitude(state("g2", "g0", "g0")) == pytest.approx(c)
    assert vec.amplitude(state("e0", "g0", "g0")) == pytest.approx(1j * c)


def test_product_state_rejects_leaking_cross_terms():
    man = enumerate_manifold(2)
    c = 1.0 / np.sqrt(2.0)
    factors = [
        [(lv("g0"), c), (lv("g2"), c)],
        [(lv("g0"), c), (lv("g2"), c)],
        [(lv("g0"), 1.0)],
    ]
    # the g2 (x) g2 cross term carries total 4
    with pytest.raises(UnsupportedProductError):
        product_state(man, factors)


def test_product_state_input_validation():
    man = enumerate_manifold(2)
    good = [(lv("g0"), 1.0)]
    with pytest.raises(ValueError):
        product_state(man, [good, good])  # two factors only
    with pytest.raises(ValueError):
        product_state(man, [[], good, good])
    with pytest.raises(ValueError):
        product_state(man, [[(lv("g2"), 0.5)], good, good])  # not normalized
    with pytest.raises(ValueError):
        product_state(
            man,
            [[(lv("g2"), 0.8), (lv("g2"), 0.6)], good, good],  # repeated level
        )


# ---------------------------------------------------------------- relabeling

def test_permutation_matrix_matches_permute_cavities():
    rng = np.random.default_rng(11)
    man = enumerate_manifold(4)
    amps = rng.normal(size=man.dim) + 1j * rng.normal(size=man.dim)
    vec = StateVector(man, amps / np.linalg.norm(amps))
    for perm in ALL_PERMUTATIONS:
        mat = permutation_matrix(man, perm)
        assert np.allclose(mat @ vec.amplitudes,
                           permute_cavities(vec, perm).amplitudes)
        assert np.allclose(mat @ mat.T, np.eye(man.dim))


def test_permuted_moves_contents_where_told():
    # cavity 1 -> 2, 2 -> 3, 3 -> 1
    assert str(state("g2", "g0", "g0").permuted((2, 3, 1))) == "|g0,g2,g0>"


def test_invalid_permutations_rejected():
    man = enumerate_manifold(2)
    with pytest.raises(ValueError):
        permutation_matrix(man, (1, 1, 2))
    with pytest.raises(ValueError):
        permute_cavities(StateVector(man, np.eye(6)[0]), (0, 1, 2))


def test_symmetrize_orbit_weights():
    vec = symmetrize(state("g2", "g0", "g0"))
    man = vec.manifold
    expect = np.zeros(man.dim)
    expect[[0, 1, 2]] = 1.0 / np.sqrt(3.0)
    assert np.allclose(vec.amplitudes, expect)
    # a fully symmetric input is a fixed point
    sym = symmetrize(state("g2", "g2", "g2"))
    assert sym.amplitude(state("g2", "g2", "g2")) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        symmetrize(state("g2", "g0", "g0"), kind="odd")


def test_symmetrize_even_orbit():
    vec = symmetrize(state("g4", "g2", "g0"), kind="even")
    nonzero = np.flatnonzero(np.abs(vec.amplitudes) > 0)
    assert len(nonzero) == 3
    assert vec.norm == pytest.approx(1.0)
