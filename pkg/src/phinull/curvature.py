"""Algebraic curvature tensors at a point.

Sign convention
---------------
Components are stored as the fully covariant array

    R[a, b, c, d] = g(R(e_c, e_d) e_b, e_a),

i.e. the last two slots form the operator pair, the second slot is the
operator's argument and the first slot is paired through the metric. In this
convention the tensor is skew in (1,2) and in (3,4), symmetric under pair
exchange, and satisfies the first Bianchi identity cyclically over slots
(2,3,4). With the builders below, the Jacobi operator of a unit spacelike
vector on a constant-curvature tensor has the curvature constant itself as
its sole eigenvalue, which is the anchor test pinning the convention.

A mapping to the two common alternative conventions is tabulated in the
project README.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gff import GffStructure
from .linalg import DegenerateSubspaceError, ScalarProduct, inner
from .reports import ValidationReport

VALIDATE_ATOL = 1e-10
PLANE_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class CurvatureTensor:
    """Rank-4 component array in the convention documented in the module docstring."""

    components: np.ndarray

    def __post_init__(self):
        comps = np.asarray(self.components)
        if comps.ndim != 4 or len(set(comps.shape)) != 1:
            raise ValueError(f"curvature components must be (m,m,m,m), got {comps.shape}")

    @property
    def dim(self) -> int:
        return self.components.shape[0]

    def value(self, X, Y, Z, W) -> float:
        """The scalar R(X, Y, Z, W)."""
        return float(
            np.einsum(
                "abcd,a,b,c,d->",
                self.components,
                np.asarray(X, dtype=float),
                np.asarray(Y, dtype=float),
                np.asarray(Z, dtype=float),
                np.asarray(W, dtype=float),
            )
        )


@dataclass(frozen=True, eq=False)
class PlaneSection:
    """A plane span(x, y) with its Gram determinant delta = g(x,x)g(y,y) - g(x,y)^2."""

    x: np.ndarray
    y: np.ndarray
    delta: float

    @classmethod
    def from_vectors(cls, g: ScalarProduct, x, y) -> "PlaneSection":
        xv = np.asarray(x, dtype=float).reshape(-1)
        yv = np.asarray(y, dtype=float).reshape(-1)
        delta = inner(g, xv, xv) * inner(g, yv, yv) - inner(g, xv, yv) ** 2
        return cls(x=xv, y=yv, delta=float(delta))

    def scale(self, g: ScalarProduct) -> float:
        """Natural magnitude of delta for these vectors: (|g| |x|^2) (|g| |y|^2).

        Degeneracy must be judged against the vectors' size, not against the
        value of the products, which collapse together near a null plane.
        """
        gmax = float(np.abs(g.components).max())
        return (gmax * float(self.x @ self.x)) * (gmax * float(self.y @ self.y))


def operator_apply(R: CurvatureTensor, g: ScalarProduct, y, pair_a, pair_b) -> np.ndarray:
    """The vector R(pair_a, pair_b) y.

    The covector a -> R[a, y, pair_a, pair_b] is raised through the inverse
    metric. The classical Jacobi operator of z applied to y is
    ``operator_apply(R, g, z, y, z)`` (operator pair (y, z), argument z).
    """
    covector = np.einsum(
        "abcd,b,c,d->a",
        R.components,
        np.asarray(y, dtype=float),
        np.asarray(pair_a, dtype=float),
        np.asarray(pair_b, dtype=float),
    )
    return np.linalg.solve(g.components, covector)


def validate_curvature(R: CurvatureTensor, g: ScalarProduct, tol: float = VALIDATE_ATOL) -> ValidationReport:
    """Residual report for the four curvature symmetries."""
    if R.dim != g.dim:
        raise ValueError(f"curvature dim {R.dim} != metric dim {g.dim}")
    comps = R.components
    report = ValidationReport(subject="curvature")

    def _add(name: str, deviation: np.ndarray) -> None:
        residual = float(np.abs(deviation).max())
        idx = np.unravel_index(int(np.abs(deviation).argmax()), deviation.shape)
        report.add(name, residual, tol, detail=f"worst at indices {tuple(int(i) for i in idx)}")

    _add("skew_first_pair", comps + comps.transpose(1, 0, 2, 3))
    _add("skew_second_pair", comps + comps.transpose(0, 1, 3, 2))
    _add("pair_exchange", comps - comps.transpose(2, 3, 0, 1))
    bianchi = comps + comps.transpose(0, 2, 3, 1) + comps.transpose(0, 3, 1, 2)
    _add("first_bianchi", bianchi)
    return report


def symmetrize_curvature(array: np.ndarray) -> np.ndarray:
    """Project a rank-4 array onto the curvature-symmetry subspace.

    Antisymmetrizes both index pairs, symmetrizes pair exchange, then removes
    the first-Bianchi violation by subtracting the cyclic average (which, on
    the pair-symmetric class, is the projection onto fully antisymmetric
    4-tensors). Idempotent; fixes every valid curvature tensor.
    """
    T = np.asarray(array, dtype=float)
    T = 0.5 * (T - T.transpose(1, 0, 2, 3))
    T = 0.5 * (T - T.transpose(0, 1, 3, 2))
    T = 0.5 * (T + T.transpose(2, 3, 0, 1))
    cyclic = (T + T.transpose(0, 2, 3, 1) + T.transpose(0, 3, 1, 2)) / 3.0
    return T - cyclic


def constant_curvature(g: ScalarProduct, c: float) -> CurvatureTensor:
    """The space-form tensor R(Z, W)Y = c (g(Y, W) Z - g(Y, Z) W)."""
    G = g.components
    comps = c * (np.einsum("ac,bd->abcd", G, G) - np.einsum("ad,bc->abcd", G, G))
    return CurvatureTensor(components=comps)


def random_algebraic_curvature(g: ScalarProduct, seed: int, scale: float = 1.0) -> CurvatureTensor:
    """A generic curvature tensor: i.i.d. normal entries projected onto the symmetry class."""
    rng = np.random.default_rng(seed)
    raw = scale * rng.standard_normal((g.dim,) * 4)
    return CurvatureTensor(components=symmetrize_curvature(raw))


def phi_model_family(S: GffStructure, a: float, b: float) -> CurvatureTensor:
    """Curvature family adapted to a framed structure.

    R(Z,W)Y = a (g(Y,W) Z - g(Y,Z) W)
            + b (g(phi W, Y) phi Z - g(phi Z, Y) phi W - 2 g(phi Z, W) phi Y).

    For every unit x in the phi-celestial sphere the Jacobi operator acts as
    a*y + 3b*g(y, phi x) phi x on x-perp, so phi x is an eigenvector with
    eigenvalue a + 3b and everything orthogonal to {x, phi x} gets a. With
    b = 0 this is the constant-curvature tensor. This is the engine's stock
    source of genuinely phi-null Osserman test instances; it is validated
    against a brute-force contraction oracle in the test suite and is not
    claimed to be the curvature of any particular manifold.
    """
    G = S.g.components
    P = G @ S.phi  # two-form components: P[i, j] = g(e_i, phi e_j)
    comps = a * (np.einsum("ac,bd->abcd", G, G) - np.einsum("ad,bc->abcd", G, G))
    comps += b * (
        np.einsum("ac,bd->abcd", P, P)
        - np.einsum("ad,bc->abcd", P, P)
        + 2.0 * np.einsum("ab,cd->abcd", P, P)
    )
    return CurvatureTensor(components=comps)


def sectional_curvature(
    R: CurvatureTensor,
    g: ScalarProduct,
    x,
    y,
    plane_rtol: float = PLANE_RTOL,
) -> float:
    """R(x, y, x, y) / delta for a nondegenerate plane span(x, y).

    Raises ``DegenerateSubspaceError`` when |delta| falls below the relative
    tolerance -- dependent vectors and degenerate (null-containing) planes
    alike.
    """
    plane = PlaneSection.from_vectors(g, x, y)
    threshold = plane_rtol * max(plane.scale(g), 1e-300)
    if abs(plane.delta) <= threshold:
        raise DegenerateSubspaceError(
            f"plane is degenerate: |delta| = {abs(plane.delta):.3e} <= {threshold:.3e}"
        )
    return R.value(plane.x, plane.y, plane.x, plane.y) / plane.delta
