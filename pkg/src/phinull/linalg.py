"""Linear algebra over indefinite scalar-product spaces.

Everything downstream (framed structures, curvature, Jacobi operators,
fibration models) is built on the primitives in this module: a nondegenerate
symmetric bilinear form with explicit signature, causal classification of
vectors, orthogonal complements, and Gram-Schmidt orthonormalization that
tolerates sign-indefinite pivots.

Conventions
-----------
- Vectors are plain 1-d ``numpy`` coordinate arrays in the ambient standard
  basis; there is no wrapper class.
- A ``SubspaceBasis`` stores its basis vectors as the *rows* of a ``(k, m)``
  array together with the ``(k, k)`` Gram matrix of the restricted form.
- Rank decisions use a relative tolerance (``RANK_RTOL`` times the matrix
  max-norm); the causal-character cutoff is absolute (``NULL_ATOL``). Both
  defaults can be overridden per call.
- Complements are computed from the nullspace of the Gram map via SVD, not by
  pivoted elimination, so they behave uniformly across signatures.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

RANK_RTOL = 1e-9
NULL_ATOL = 1e-10
ORTHONORMAL_ATOL = 1e-10


class GeometryError(Exception):
    """Base class for all geometric failures raised by this package."""


class DegenerateSubspaceError(GeometryError):
    """A restriction of the scalar product is degenerate (null pivot, flat plane)."""


class CausalCharacterError(GeometryError):
    """A vector does not have the causal character an operation requires."""


class CausalCharacter(Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    NULL = "null"
    ZERO = "zero"


def _as_vector(x, dim: int | None = None) -> np.ndarray:
    v = np.asarray(x, dtype=float).reshape(-1)
    if dim is not None and v.shape[0] != dim:
        raise ValueError(f"vector has length {v.shape[0]}, expected {dim}")
    return v


@dataclass(frozen=True, eq=False)
class ScalarProduct:
    """A nondegenerate symmetric bilinear form with explicit signature.

    ``components`` is stored symmetrized; ``signature`` is the pair
    ``(n_plus, n_minus)`` of positive/negative inertia indices.
    """

    components: np.ndarray
    signature: tuple[int, int]

    @classmethod
    def from_matrix(cls, matrix, rank_rtol: float = RANK_RTOL) -> "ScalarProduct":
        mat = np.asarray(matrix, dtype=float)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"scalar product needs a square matrix, got shape {mat.shape}")
        sym = 0.5 * (mat + mat.T)
        scale = float(np.abs(sym).max()) if sym.size else 0.0
        eigvals = np.linalg.eigvalsh(sym)
        tol = rank_rtol * max(scale, 1.0)
        if np.any(np.abs(eigvals) <= tol):
            raise DegenerateSubspaceError(
                f"scalar product is degenerate: eigenvalue of magnitude "
                f"{float(np.min(np.abs(eigvals))):.3e} below tolerance {tol:.3e}"
            )
        n_plus = int(np.sum(eigvals > 0.0))
        n_minus = int(np.sum(eigvals < 0.0))
        sym.setflags(write=False)
        return cls(components=sym, signature=(n_plus, n_minus))

    @classmethod
    def diagonal(cls, entries) -> "ScalarProduct":
        return cls.from_matrix(np.diag(np.asarray(entries, dtype=float)))

    @classmethod
    def minkowski(cls, dim: int) -> "ScalarProduct":
        """diag(-1, +1, ..., +1) on ``dim`` coordinates."""
        return cls.diagonal([-1.0] + [1.0] * (dim - 1))

    @property
    def dim(self) -> int:
        return self.components.shape[0]

    @property
    def is_lorentzian(self) -> bool:
        return self.signature[1] == 1


def inner(g: ScalarProduct, x, y) -> float:
    """Evaluate g(x, y).

    The two contraction orders are averaged so that ``inner(g, x, y)`` and
    ``inner(g, y, x)`` are bitwise equal, not merely equal up to roundoff.
    """
    xv = _as_vector(x, g.dim)
    yv = _as_vector(y, g.dim)
    return 0.5 * (float(xv @ (g.components @ yv)) + float(yv @ (g.components @ xv)))


def causal_character(g: ScalarProduct, x, null_tol: float = NULL_ATOL) -> CausalCharacter:
    """Classify x as spacelike / timelike / null / zero under g."""
    xv = _as_vector(x, g.dim)
    if not np.any(xv):
        return CausalCharacter.ZERO
    q = inner(g, xv, xv)
    if abs(q) <= null_tol:
        return CausalCharacter.NULL
    return CausalCharacter.TIMELIKE if q < 0.0 else CausalCharacter.SPACELIKE


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """An ordered, linearly independent set of vectors with its Gram matrix.

    ``vectors`` has shape ``(k, m)`` (rows are basis vectors); ``gram`` is the
    ``(k, k)`` matrix of pairwise scalar products, recomputable bit-for-bit as
    ``vectors @ g.components @ vectors.T``.
    """

    vectors: np.ndarray
    gram: np.ndarray

    @classmethod
    def from_vectors(cls, g: ScalarProduct, vectors, rank_rtol: float = RANK_RTOL) -> "SubspaceBasis":
        rows = np.atleast_2d(np.asarray(vectors, dtype=float))
        if rows.shape[1] != g.dim:
            raise ValueError(f"basis vectors have length {rows.shape[1]}, expected {g.dim}")
        if matrix_rank(rows, rank_rtol) != rows.shape[0]:
            raise ValueError("basis vectors are linearly dependent")
        gram = rows @ g.components @ rows.T
        rows = rows.copy()
        rows.setflags(write=False)
        gram.setflags(write=False)
        return cls(vectors=rows, gram=gram)

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.vectors.shape[1]

    def recompute_gram(self, g: ScalarProduct) -> np.ndarray:
        return self.vectors @ g.components @ self.vectors.T


def matrix_rank(matrix: np.ndarray, rank_rtol: float = RANK_RTOL) -> int:
    """Rank with the package-wide relative tolerance (vs. the max-norm)."""
    mat = np.atleast_2d(np.asarray(matrix, dtype=float))
    if mat.size == 0:
        return 0
    svals = np.linalg.svd(mat, compute_uv=False)
    tol = rank_rtol * max(float(np.abs(mat).max()), 1.0)
    return int(np.sum(svals > tol))


def nullspace(matrix: np.ndarray, rank_rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthonormal (Euclidean) basis of the nullspace, rows of shape (dim_null, m)."""
    mat = np.atleast_2d(np.asarray(matrix, dtype=float))
    _, svals, vh = np.linalg.svd(mat)
    tol = rank_rtol * max(float(np.abs(mat).max()), 1.0)
    rank = int(np.sum(svals > tol))
    return vh[rank:]


def orthogonal_complement(g: ScalarProduct, vectors, rank_rtol: float = RANK_RTOL) -> SubspaceBasis:
    """Basis of {y : g(y, v) = 0 for all given v}.

    For nondegenerate g and k independent inputs the result has dimension
    m - k. A null vector's complement contains the vector itself.
    """
    rows = np.atleast_2d(np.asarray(vectors, dtype=float))
    if rows.shape[1] != g.dim:
        raise ValueError(f"vectors have length {rows.shape[1]}, expected {g.dim}")
    if matrix_rank(rows, rank_rtol) != rows.shape[0]:
        raise ValueError("input vectors are linearly dependent")
    constraints = rows @ g.components
    basis = nullspace(constraints, rank_rtol)
    return SubspaceBasis.from_vectors(g, basis, rank_rtol)


def orthonormalize(
    g: ScalarProduct,
    basis: SubspaceBasis,
    pivot_tol: float = NULL_ATOL,
) -> SubspaceBasis:
    """Indefinite Gram-Schmidt: output Gram is diag(+-1), same span.

    Raises ``DegenerateSubspaceError`` when a pivot's self-product falls below
    tolerance -- the same obstruction as a degenerate plane. No pivoting is
    attempted: a null leading vector is an error even when the span itself is
    nondegenerate.
    """
    out: list[np.ndarray] = []
    signs: list[float] = []
    gmax = max(float(np.abs(g.components).max()), 1.0)
    for row in basis.vectors:
        v = row.astype(float).copy()
        for u, sign in zip(out, signs):
            v -= sign * inner(g, v, u) * u
        q = inner(g, v, v)
        scale = gmax * max(float(v @ v), 1.0)
        if abs(q) <= pivot_tol * scale:
            raise DegenerateSubspaceError(
                f"degenerate pivot at position {len(out)}: |g(v,v)| = {abs(q):.3e}"
            )
        out.append(v / np.sqrt(abs(q)))
        signs.append(1.0 if q > 0.0 else -1.0)
    return SubspaceBasis.from_vectors(g, np.array(out))


def orthonormal_frame(g: ScalarProduct, vectors, rank_rtol: float = RANK_RTOL) -> SubspaceBasis:
    """Orthonormalized basis of span(vectors); convenience wrapper."""
    return orthonormalize(g, SubspaceBasis.from_vectors(g, vectors, rank_rtol))


def sample_unit_sphere(
    g: ScalarProduct,
    frame: SubspaceBasis,
    count: int,
    seed: int,
) -> np.ndarray:
    """Uniform samples from the unit sphere of a spacelike subspace.

    ``frame`` must be g-orthonormal with all signs +1 (positive definite
    restriction); draws are standard normals pushed through the frame, which
    is the uniform sphere measure. Deterministic for a fixed seed.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    k = frame.dim
    if not np.allclose(frame.gram, np.eye(k), atol=ORTHONORMAL_ATOL):
        raise DegenerateSubspaceError(
            "sphere sampling requires a positive definite, orthonormal frame"
        )
    rng = np.random.default_rng(seed)
    coeffs = np.empty((count, k))
    filled = 0
    while filled < count:
        draw = rng.standard_normal((count - filled, k))
        norms = np.linalg.norm(draw, axis=1)
        keep = norms > 1e-12
        kept = draw[keep] / norms[keep, None]
        coeffs[filled : filled + kept.shape[0]] = kept
        filled += kept.shape[0]
    return coeffs @ frame.vectors
