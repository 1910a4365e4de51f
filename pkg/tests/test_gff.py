"""Framed-structure axioms, samplers, and the congruence/sphere shift maps."""

import dataclasses

import numpy as np
import pytest

from helpers import conjugated_structure
from phinull.gff import (
    GffStructure,
    canonical_structure,
    fundamental_two_form,
    phi_image_frame,
    psi,
    psi_inverse,
    sample_celestial,
    sample_null_congruence,
    sample_phi_celestial,
    sample_phi_null_congruence,
    validate_gff,
)
from phinull.linalg import CausalCharacter, CausalCharacterError, causal_character, inner, matrix_rank


def test_canonical_small_structure():
    S = canonical_structure(1, 1)
    assert S.dim == 3
    assert S.epsilon.tolist() == [-1.0]
    assert matrix_rank(S.phi) == 2
    assert validate_gff(S).passed


def test_canonical_epsilon_pattern():
    S = canonical_structure(2, 3)
    assert S.epsilon.tolist() == [-1.0, 1.0, 1.0]
    assert validate_gff(S).passed


def test_refuses_degenerate_parameters():
    with pytest.raises(ValueError):
        canonical_structure(1, 0)  # s = 0: almost complex case is out of scope
    with pytest.raises(ValueError):
        canonical_structure(0, 2)


def test_validate_detects_phi_perturbation_with_predicted_residual():
    S = canonical_structure(2, 2)
    phi = S.phi.copy()
    phi[0, 0] += 1e-3
    perturbed = dataclasses.replace(S, phi=phi)
    report = validate_gff(perturbed)
    assert not report.passed
    cubic = {c.name: c for c in report.checks}["phi_cubed_plus_phi"]
    expected = np.abs(phi @ phi @ phi + phi).max()
    assert not cubic.passed
    assert cubic.residual == pytest.approx(expected, rel=1e-12)
    assert 1e-4 < cubic.residual < 1e-2


def test_validate_detects_forced_duality_break():
    S = canonical_structure(1, 2)
    eta = S.eta.copy()
    eta[0] = 0.0  # forces eta^1(xi_1) = 0
    report = validate_gff(dataclasses.replace(S, eta=eta))
    names = {c.name for c in report.failing()}
    assert "eta_xi_duality" in names


def test_structure_invariants_on_generic_coordinates():
    S = conjugated_structure(2, 3, seed=5)
    assert validate_gff(S).passed
    assert abs(np.trace(S.phi)) < 1e-10
    assert matrix_rank(S.phi) == 2 * S.n
    gram = S.xi @ S.g.components @ S.xi.T
    assert np.abs(gram - np.diag(S.epsilon)).max() < 1e-10
    # Im(phi) orthogonal to ker(phi)
    assert np.abs(S.xi @ S.g.components @ S.phi).max() < 1e-10


def test_two_form_canonical_value():
    S = canonical_structure(1, 1)
    e0, e1 = np.eye(3)[0], np.eye(3)[1]
    assert fundamental_two_form(S, e0, e1) == pytest.approx(-1.0)


def test_two_form_skew_and_kernel():
    S = conjugated_structure(1, 2, seed=9)
    rng = np.random.default_rng(0)
    for _ in range(20):
        X, Y = rng.standard_normal(S.dim), rng.standard_normal(S.dim)
        assert fundamental_two_form(S, X, Y) == pytest.approx(-fundamental_two_form(S, Y, X), abs=1e-12)
        assert fundamental_two_form(S, X, X) == pytest.approx(0.0, abs=1e-12)
    for a in range(S.s):
        Y = rng.standard_normal(S.dim)
        assert fundamental_two_form(S, Y, S.xi[a]) == pytest.approx(0.0, abs=1e-12)


def test_phi_celestial_sampler_canonical_plane():
    S = canonical_structure(1, 1)
    pts = sample_phi_celestial(S, 32, seed=0).points
    assert np.abs(pts[:, 2]).max() < 1e-12  # inside the first coordinate plane
    assert np.abs(np.linalg.norm(pts[:, :2], axis=1) - 1.0).max() < 1e-12


def test_phi_celestial_points_are_spacelike_and_deterministic():
    S = conjugated_structure(2, 2, seed=3)
    sample = sample_phi_celestial(S, 16, seed=5)
    again = sample_phi_celestial(S, 16, seed=5)
    assert np.array_equal(sample.points, again.points)
    for x in sample.points:
        assert causal_character(S.g, x) is CausalCharacter.SPACELIKE
        phix = S.phi @ x
        # phi x is unit, spacelike, orthogonal to x
        assert inner(S.g, phix, phix) == pytest.approx(1.0, abs=1e-10)
        assert inner(S.g, x, phix) == pytest.approx(0.0, abs=1e-10)
    with pytest.raises(ValueError):
        sample_phi_celestial(S, 0, seed=1)


def test_other_sampler_kinds_satisfy_their_constraints():
    S = conjugated_structure(1, 2, seed=11)
    z = S.timelike_frame_vector
    for u in sample_null_congruence(S, 8, seed=2).points:
        assert abs(inner(S.g, u, u)) < 1e-12
        assert inner(S.g, u, z) == pytest.approx(-1.0, abs=1e-12)
    for u in sample_phi_null_congruence(S, 8, seed=2).points:
        assert abs(inner(S.g, u, u)) < 1e-12
        assert np.abs(S.eta @ (u - z)).max() < 1e-12
    for x in sample_celestial(S, 8, seed=2).points:
        assert inner(S.g, x, x) == pytest.approx(1.0, abs=1e-12)


def test_phi_image_frame_is_orthonormal():
    S = conjugated_structure(2, 3, seed=21)
    frame = phi_image_frame(S)
    assert frame.dim == 2 * S.n
    assert np.allclose(frame.gram, np.eye(frame.dim), atol=1e-12)


def test_psi_defining_identities():
    S = canonical_structure(1, 1)
    u = S.xi[0] + np.eye(3)[0]
    assert abs(inner(S.g, u, u)) < 1e-14
    assert inner(S.g, u, S.xi[0]) == pytest.approx(-1.0)
    assert np.allclose(psi(S, u), np.eye(3)[0])


def test_psi_round_trips_on_sphere_points():
    S = conjugated_structure(2, 2, seed=7)
    for x in sample_celestial(S, 100, seed=13).points:
        u = psi_inverse(S, x)
        assert np.abs(psi(S, u) - x).max() < 1e-12
        assert abs(inner(S.g, u, u)) < 1e-12
        assert inner(S.g, u, S.xi[0]) == pytest.approx(-1.0, abs=1e-12)


def test_psi_rejects_wrong_normalization():
    S = canonical_structure(1, 1)
    with pytest.raises(CausalCharacterError):
        psi(S, 2.0 * S.xi[0] + np.eye(3)[0])  # g(u, xi_1) = -2
    with pytest.raises(CausalCharacterError):
        psi_inverse(S, 2.0 * np.eye(3)[0])  # not unit


def test_phi_null_restriction_of_psi():
    # u in the phi-null congruence iff psi(u) in the phi-celestial sphere
    S = conjugated_structure(1, 3, seed=15)
    for u in sample_phi_null_congruence(S, 10, seed=4).points:
        x = psi(S, u)
        assert np.abs(S.eta @ x).max() < 1e-12


def test_shape_mismatch_raises():
    S = canonical_structure(1, 1)
    with pytest.raises(ValueError):
        GffStructure(n=1, s=1, g=S.g, phi=S.phi[:2, :2], xi=S.xi, eta=S.eta, epsilon=S.epsilon)
