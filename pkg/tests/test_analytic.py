"""Closed-form amplitude families against the exact propagator."""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from trimodal.analytic import (
    FAMILIES,
    evaluate,
    matrix_representation,
    n2_amplitudes,
    n2_exchange_symmetric,
    n6_concentrated_AF,
    pattern_compression,
)
from trimodal.basis import StateVector, enumerate_manifold
from trimodal.dynamics import build_large_xi_generator
from trimodal.evolve import propagate

SOLVING = [name for name, fam in FAMILIES.items() if fam.solves_hopping]


def test_registry_contents():
    assert set(FAMILIES) == {
        "n2_general", "n4_single_cavity", "n4_two_cavity",
        "n6_concentrated", "n6_symmetric", "n6_asymmetric",
    }
    assert SOLVING == [n for n in FAMILIES if n != "n6_symmetric"]
    for name, fam in FAMILIES.items():
        assert fam.name == name
        assert set(fam.patterns) == set(fam.labels)


@pytest.mark.parametrize("name", list(FAMILIES))
def test_time_zero_matches_initial_state(name):
    fam = FAMILIES[name]
    state = fam.state_vector(fam.evaluate(1.0, 0.0))
    assert np.allclose(state.amplitudes, fam.initial_state().amplitudes,
                       atol=1e-12)
    assert state.norm == pytest.approx(1.0)


@pytest.mark.parametrize("name", SOLVING)
def test_closed_forms_solve_the_exchange_dynamics(name):
    fam = FAMILIES[name]
    gen = build_large_xi_generator(fam.manifold)
    phases = np.linspace(0.0, math.pi, 211)
    traj = propagate(gen, fam.initial_state(), phases, times_are_phase=True)
    worst = 0.0
    for k, phi in enumerate(phases):
        predicted = fam.state_vector(fam.evaluate(1.0, phi))
        worst = max(worst, float(np.max(np.abs(
            predicted.amplitudes - traj.amplitudes[k]))))
    assert worst < 1e-9


@pytest.mark.parametrize("name", list(FAMILIES))
def test_conserved_sums_hold_along_the_orbit(name):
    fam = FAMILIES[name]
    for phi in (0.0, 0.37, 1.91, 3.1):
        assert fam.conservation_residual(fam.evaluate(1.0, phi)) < 1e-9


@pytest.mark.parametrize("name", SOLVING)
def test_pattern_compression_recovers_the_documented_system(name):
    fam = FAMILIES[name]
    comp = pattern_compression(fam, build_large_xi_generator(fam.manifold))
    assert np.allclose(comp, fam.system_matrix, atol=1e-12)


def test_symmetric_family_compression_gap_is_diagonal():
    # the recorded system drops the couplings inside each orbit; the true
    # compression differs by a diagonal correction on three labels
    fam = FAMILIES["n6_symmetric"]
    comp = pattern_compression(fam, build_large_xi_generator(fam.manifold))
    gap = comp - fam.system_matrix
    assert np.allclose(gap, np.diag(np.diag(gap)), atol=1e-12)
    expected = {lab: 0.0 for lab in fam.labels}
    expected.update({"F": 14.0, "G": 2.0, "H": 2.0})
    assert np.real(np.diag(gap)) == pytest.approx(
        [expected[lab] for lab in fam.labels])


@pytest.mark.parametrize("name", SOLVING)
def test_amplitudes_round_trip_through_the_state(name):
    fam = FAMILIES[name]
    aset = fam.evaluate(1.0, 0.83)
    back = fam.amplitudes_from_state(fam.state_vector(aset), 1.0, 0.83)
    assert np.allclose(back.values, aset.values, atol=1e-12)


def test_amplitudes_from_state_rejects_off_pattern_states():
    fam = FAMILIES["n4_single_cavity"]
    man = fam.manifold
    orbit = next(p for p in fam.patterns.values() if len(p) > 1)
    lopsided = np.zeros(man.dim, dtype=complex)
    lopsided[man.index_of(orbit[0][0])] = 1.0  # one orbit member only
    with pytest.raises(ValueError, match="pattern symmetry"):
        fam.amplitudes_from_state(StateVector(man, lopsided))
    covered = {man.index_of(b) for p in fam.patterns.values() for b, _ in p}
    outside = next(i for i in range(man.dim) if i not in covered)
    stray = np.zeros(man.dim, dtype=complex)
    stray[outside] = 1.0
    with pytest.raises(ValueError, match="outside"):
        fam.amplitudes_from_state(StateVector(man, stray))


def test_parameter_validation():
    fam = FAMILIES["n2_general"]
    with pytest.raises(ValueError):
        fam.evaluate(1.0, 0.1, zz=3.0)
    with pytest.raises(ValueError):
        fam.evaluate(1.0, 0.1, a=1.0, b=1.0)
    ok = fam.evaluate(1.0, 0.1, a=0.6, b=0.8j)
    assert fam.conservation_residual(ok, a=0.6, b=0.8j) < 1e-12


def test_module_level_evaluate_dispatch():
    direct = FAMILIES["n4_two_cavity"].evaluate(2.0, 0.4)
    routed = evaluate("n4_two_cavity", 2.0, 0.4)
    assert np.allclose(routed.values, direct.values)
    with pytest.raises(ValueError, match="n2_general"):
        evaluate("not_a_family", 1.0, 0.0)


# --------------------------------------------------------------- total 2

def test_pair_leaves_its_cavity_at_a_third_turn():
    folded = n2_exchange_symmetric(evaluate("n2_general", 1.0, math.pi / 3.0))
    assert abs(folded["B"]) < 1e-12
    assert abs(folded["A"]) == pytest.approx(1.0)


def test_stay_probability_profile():
    ts = np.linspace(0.0, math.pi, 50)
    table = n2_amplitudes(np.eye(6)[0].astype(complex), 1.0, ts)
    assert table.shape == (50, 6)
    assert np.abs(table[:, 0]) ** 2 == pytest.approx((5 + 4 * np.cos(6 * ts)) / 9)


def test_n2_amplitudes_validation():
    with pytest.raises(ValueError):
        n2_amplitudes(np.zeros(5, dtype=complex), 1.0, 0.0)
    with pytest.raises(ValueError):
        n2_amplitudes(0.5 * np.eye(6)[0].astype(complex), 1.0, 0.0)


def test_exchange_fold_requires_the_symmetry():
    aset = evaluate("n2_general", 1.0, 0.2)
    assert set(n2_exchange_symmetric(aset)) == {"A", "B", "C"}
    with pytest.raises(ValueError):
        n2_exchange_symmetric(FAMILIES["n4_single_cavity"].evaluate(1.0, 0.1))
    lopsided = n2_amplitudes(np.array([0, 1, 0, 0, 0, 0], dtype=complex), 1.0, 0.3)
    with pytest.raises(ValueError):
        n2_exchange_symmetric(lopsided)


# --------------------------------------------------------------- total 4 / 6

def test_single_cavity_family_third_turn_split():
    aset = evaluate("n4_single_cavity", 1.0, math.pi / 3.0)
    assert abs(aset["A"]) < 1e-12 and abs(aset["B"]) < 1e-12
    assert aset.probability("C") == pytest.approx(18.0 / 25.0)
    assert aset.probability("F") == pytest.approx(7.0 / 25.0)


def test_two_cavity_family_third_turn_split():
    aset = evaluate("n4_two_cavity", 1.0, math.pi / 3.0)
    assert aset.probability("A") == pytest.approx(18.0 / 25.0)
    assert aset.probability("P") == pytest.approx(7.0 / 25.0)


def test_concentrated_pair_of_amplitudes_matches_family():
    fam = FAMILIES["n6_concentrated"]
    for phi in (0.0, 0.51, 2.7):
        a, f = n6_concentrated_AF(1.0, phi)
        aset = fam.evaluate(1.0, phi)
        assert a == pytest.approx(aset["A"], abs=1e-12)
        assert f == pytest.approx(aset["F"], abs=1e-12)
    a0, _ = n6_concentrated_AF(1.0, 0.0)
    assert a0 == pytest.approx(1.0)


def test_asymmetric_family_landmark_times():
    pi5 = evaluate("n6_asymmetric", 1.0, math.pi / 5.0)
    assert pi5.probability("A") == pytest.approx(
        (4.0 / 9.0) * math.sin(math.pi / 5.0) ** 2)
    pi3 = evaluate("n6_asymmetric", 1.0, math.pi / 3.0)
    assert pi3.probability("C") == pytest.approx(18.0 / 25.0)
    assert pi3.probability("D") == pytest.approx(7.0 / 25.0)


def test_asymmetric_family_half_window_reflection():
    # |X(phi)| = |X(pi - phi)| for every label in this family
    fam = FAMILIES["n6_asymmetric"]
    for phi in (0.21, 0.9, 1.44):
        front = np.abs(fam.evaluate(1.0, phi).values)
        back = np.abs(fam.evaluate(1.0, math.pi - phi).values)
        assert front == pytest.approx(back, abs=1e-12)


# --------------------------------------------------------------- rebuilders

def test_matrix_representation_matches_matrix_exponential():
    rng = np.random.default_rng(9)
    raw = rng.normal(size=(5, 5))
    mat = (raw + raw.T) / 2.0
    x0 = rng.normal(size=5) + 1j * rng.normal(size=5)
    x0 /= np.linalg.norm(x0)
    freqs, coeffs = matrix_representation(mat, x0)
    for phi in (0.0, 0.7, 2.2):
        direct = expm(-1j * mat * phi) @ x0
        rebuilt = np.exp(-1j * freqs * phi) @ coeffs
        assert np.allclose(rebuilt, direct, atol=1e-12)
