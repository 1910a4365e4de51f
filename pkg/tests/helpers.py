"""Shared test utilities: independent oracles and randomized structure generators.

The brute-force oracles below deliberately avoid the package's operator
pipelines: bilinear forms are contracted directly from the component arrays
with one einsum, complements come from raw SVD calls, and eigenvalues from
plain numpy. Engine results are compared against these, never against
themselves.
"""

from __future__ import annotations

import numpy as np

from phinull.gff import GffStructure, canonical_structure
from phinull.linalg import ScalarProduct


def conjugated_structure(n: int, s: int, seed: int, scale: float = 0.3) -> GffStructure:
    """A valid structure in generic coordinates: the canonical one pushed
    through a random well-conditioned change of basis."""
    S = canonical_structure(n, s)
    m = S.dim
    rng = np.random.default_rng(seed)
    L = np.eye(m) + scale * rng.standard_normal((m, m))
    Linv = np.linalg.inv(L)
    return GffStructure(
        n=n,
        s=s,
        g=ScalarProduct.from_matrix(L.T @ S.g.components @ L),
        phi=Linv @ S.phi @ L,
        xi=(Linv @ S.xi.T).T,
        eta=S.eta @ L,
        epsilon=S.epsilon.copy(),
    )


def bf_form_matrix(Rcomp: np.ndarray, basis: np.ndarray, z: np.ndarray) -> np.ndarray:
    """F[i, j] = R(b_i, z, b_j, z), contracted directly from components."""
    return np.einsum("abcd,ia,b,jc,d->ij", Rcomp, basis, z, basis, z)


def bf_perp_basis(G: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Rows spanning {y : y . G z = 0} via raw SVD."""
    row = (G @ z)[None, :]
    _, _, vh = np.linalg.svd(row)
    return vh[1:]


def bf_jacobi_spectrum(Rcomp: np.ndarray, G: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Sorted eigenvalues of the classical Jacobi operator of z, brute force."""
    basis = bf_perp_basis(G, z)
    gram = basis @ G @ basis.T
    form = bf_form_matrix(Rcomp, basis, z)
    values = np.linalg.eigvals(np.linalg.inv(gram) @ form)
    assert np.abs(values.imag).max() < 1e-8
    return np.sort(values.real)


def bf_null_jacobi_spectrum(Rcomp: np.ndarray, G: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Sorted eigenvalues of the quotient Jacobi operator of a null u, brute force."""
    perp = bf_perp_basis(G, u)
    gram = perp @ G @ perp.T
    w, V = np.linalg.eigh(gram)
    keep = np.abs(w) > 1e-9 * np.abs(w).max()
    assert int(np.sum(~keep)) == 1
    reps = V[:, keep].T @ perp
    form = bf_form_matrix(Rcomp, reps, u)
    gbar = reps @ G @ reps.T
    values = np.linalg.eigvals(np.linalg.inv(gbar) @ form)
    assert np.abs(values.imag).max() < 1e-10
    return np.sort(values.real)


def random_unit_spacelike(g: ScalarProduct, rng: np.random.Generator) -> np.ndarray:
    """One unit spacelike vector by rejection."""
    while True:
        y = rng.standard_normal(g.dim)
        q = float(y @ g.components @ y)
        if q > 1e-6:
            return y / np.sqrt(q)


def horizontal_draw(F, rng: np.random.Generator) -> np.ndarray:
    """A random vector in the horizontal space of a fibration model."""
    coeffs = rng.standard_normal(F.horizontal.dim)
    return coeffs @ F.horizontal.vectors


def expected_multiset(values, expected: dict, tol: float = 1e-8) -> bool:
    """Check a sorted eigenvalue array against {value: multiplicity}."""
    target = np.sort(np.concatenate([[v] * k for v, k in expected.items()]))
    values = np.asarray(values, dtype=float)
    return values.shape == target.shape and bool(np.abs(values - target).max() < tol)
