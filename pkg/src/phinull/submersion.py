"""Pointwise models of the torus-bundle projections and their curvature transfer.

A ``FibrationModel`` is a g-orthogonal splitting of the ambient space into a
horizontal and a vertical subspace, one per bundle projection:

- ``pi_full``: horizontal = Im(phi), vertical = all frame vectors (base is
  complex-type); shift coefficient sigma = s - 2.
- ``tau``: horizontal = Im(phi) + timelike frame vector, vertical = the
  spacelike frame vectors (base is Lorentz-contact-type); sigma = s - 1.
- ``pi_prime``: the s = 1 specialization of ``pi_full``; sigma = -1.
- ``remark_sasaki``: horizontal = Im(phi) + last (spacelike) frame vector,
  vertical includes the timelike one (base is Riemannian-contact-type);
  vertical sign sum s - 3.

The integrability tensor of each projection is implemented purely through its
closed form in the structure tensors (never through a covariant derivative,
which pointwise data cannot supply): for horizontal X, Y

    A_X Y = -g(X, phi Y) * (sum of the vertical frame vectors)

(with the sign arrangement ``+g(Y, phi X)`` kept verbatim for the
``remark_sasaki`` kind), and ``A_X xi_a = -epsilon_a phi X`` for vertical
frame directions. The keystone composition law is

    A_x A_x y = -sigma * g(y, phi x) * phi x,

where sigma is the vertical sign sum. The horizontal curvature transfer uses

    g(Rstar_x(y), z) = R(x, y, x, z) + 2 g(A_x y, A_x z) - g(A_y x, A_x z),

which equals g(R_x(y), z) + 3 sigma g(y, phi x) g(phi x, z) for arguments in
the horizontal part of x-perp. The identity is algebraic in the closed-form
A, so it doubles as the engine's internal-consistency sentinel: a violation
means a bug (or a tampered sigma), never a property of the instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .curvature import CurvatureTensor, operator_apply, sectional_curvature
from .gff import GffStructure, phi_image_frame, sample_phi_celestial, validate_gff
from .jacobi import (
    DEFAULT_CONSTANCY_TOL,
    DEFAULT_GROUPING_TOL,
    DEFAULT_SAMPLES,
    DecisionReport,
    JacobiOperator,
    PhiNullReport,
    SampleRecord,
    SpectrumError,
    decide_constancy,
    is_phi_null_osserman_wrt,
    spectrum,
)
from .linalg import (
    RANK_RTOL,
    CausalCharacterError,
    GeometryError,
    ScalarProduct,
    SubspaceBasis,
    inner,
    nullspace,
)

IDENTITY_ATOL = 1e-9
SPLIT_ATOL = 1e-10
HORIZONTAL_RTOL = 1e-8


class FibrationKind(Enum):
    PI_FULL = "pi_full"
    TAU = "tau"
    PI_PRIME = "pi_prime"
    REMARK_SASAKI = "remark_sasaki"


class RemarkKind(Enum):
    SASAKI_BASE = "sasaki_base"
    LORENTZ_SASAKI_BASE = "lorentz_sasaki_base"


@dataclass(frozen=True, eq=False)
class FibrationModel:
    """A horizontal/vertical splitting with its vertical sign sum ``sigma``."""

    kind: FibrationKind
    structure: GffStructure
    horizontal: SubspaceBasis
    vertical: SubspaceBasis
    vertical_indices: tuple[int, ...]
    sigma: float

    @property
    def vertical_sum(self) -> np.ndarray:
        """Sum of the vertical frame vectors (the closed forms' vertical factor)."""
        return self.vertical.vectors.sum(axis=0)


def make_fibration(S: GffStructure, kind: FibrationKind) -> FibrationModel:
    """Assemble the splitting for one projection kind and check its invariants."""
    if kind is FibrationKind.PI_PRIME:
        if S.s != 1:
            raise ValueError(f"{kind.value} requires s = 1, got s = {S.s}")
    elif S.s < 2:
        raise ValueError(f"{kind.value} requires s >= 2, got s = {S.s}")

    image = phi_image_frame(S)
    if kind in (FibrationKind.PI_FULL, FibrationKind.PI_PRIME):
        horizontal_rows = image.vectors
        vertical_indices = tuple(range(S.s))
        sigma = float(S.s - 2) if kind is FibrationKind.PI_FULL else -1.0
    elif kind is FibrationKind.TAU:
        horizontal_rows = np.vstack([image.vectors, S.xi[0]])
        vertical_indices = tuple(range(1, S.s))
        sigma = float(S.s - 1)
    else:  # REMARK_SASAKI
        horizontal_rows = np.vstack([image.vectors, S.xi[S.s - 1]])
        vertical_indices = tuple(range(S.s - 1))
        sigma = float(S.s - 3)

    horizontal = SubspaceBasis.from_vectors(S.g, horizontal_rows)
    vertical = SubspaceBasis.from_vectors(S.g, S.xi[list(vertical_indices)])

    cross = horizontal.vectors @ S.g.components @ vertical.vectors.T
    if np.abs(cross).max() > SPLIT_ATOL:
        raise GeometryError(
            f"horizontal/vertical splitting is not g-orthogonal: residual {np.abs(cross).max():.3e}"
        )
    if horizontal.dim + vertical.dim != S.dim:
        raise GeometryError("splitting does not fill the ambient space")
    sign_sum = float(np.sum(S.epsilon[list(vertical_indices)]))
    if abs(sign_sum - sigma) > 1e-12:
        raise GeometryError(
            f"shift coefficient {sigma} disagrees with the vertical sign sum {sign_sum}"
        )
    return FibrationModel(
        kind=kind,
        structure=S,
        horizontal=horizontal,
        vertical=vertical,
        vertical_indices=vertical_indices,
        sigma=sigma,
    )


def vertical_part(F: FibrationModel, X) -> np.ndarray:
    Xv = np.asarray(X, dtype=float).reshape(-1)
    coords = np.linalg.solve(F.vertical.gram, F.vertical.vectors @ F.structure.g.components @ Xv)
    return coords @ F.vertical.vectors


def horizontal_part(F: FibrationModel, X) -> np.ndarray:
    Xv = np.asarray(X, dtype=float).reshape(-1)
    return Xv - vertical_part(F, Xv)


def _require_horizontal(F: FibrationModel, X, what: str) -> np.ndarray:
    Xv = np.asarray(X, dtype=float).reshape(-1)
    leak = float(np.linalg.norm(vertical_part(F, Xv)))
    scale = max(float(np.linalg.norm(Xv)), 1.0)
    if leak > HORIZONTAL_RTOL * scale:
        raise GeometryError(f"{what} must be horizontal: vertical component {leak:.3e}")
    return Xv


def oneill_A(F: FibrationModel, X, Y) -> np.ndarray:
    """The integrability tensor A_X Y in closed form.

    ``X`` must be horizontal; ``Y`` may be horizontal (result is vertical) or
    vertical (result is horizontal, ``-epsilon_a phi X`` extended linearly).
    """
    S = F.structure
    Xv = _require_horizontal(F, X, "first argument of A")
    Yv = np.asarray(Y, dtype=float).reshape(-1)
    vpart = vertical_part(F, Yv)
    hpart = Yv - vpart
    scale = max(float(np.linalg.norm(Yv)), 1.0)
    if np.linalg.norm(vpart) <= HORIZONTAL_RTOL * scale:
        if F.kind is FibrationKind.REMARK_SASAKI:
            coeff = inner(S.g, Yv, S.phi @ Xv)
        else:
            coeff = -inner(S.g, Xv, S.phi @ Yv)
        return coeff * F.vertical_sum
    if np.linalg.norm(hpart) <= HORIZONTAL_RTOL * scale:
        coords = np.linalg.solve(F.vertical.gram, F.vertical.vectors @ S.g.components @ Yv)
        signed = float(np.sum(coords * S.epsilon[list(F.vertical_indices)]))
        return -signed * (S.phi @ Xv)
    raise GeometryError("second argument of A must be horizontal or vertical")


def _jacobi_form(R: CurvatureTensor, x: np.ndarray) -> np.ndarray:
    """Q[b, d] = R(x, e_b, x, e_d); then R(x, y, x, z) = y^T Q z."""
    return np.einsum("abcd,a,c->bd", R.components, x, x)


def r_star_form(R: CurvatureTensor, g: ScalarProduct, F: FibrationModel, x, y, z) -> float:
    """The transferred curvature pairing g(Rstar_x(y), z) for horizontal x, y, z."""
    xv = np.asarray(x, dtype=float).reshape(-1)
    yv = np.asarray(y, dtype=float).reshape(-1)
    zv = np.asarray(z, dtype=float).reshape(-1)
    value = R.value(xv, yv, xv, zv)
    a_xy = oneill_A(F, xv, yv)
    a_xz = oneill_A(F, xv, zv)
    a_yx = oneill_A(F, yv, xv)
    return value + 2.0 * inner(g, a_xy, a_xz) - inner(g, a_yx, a_xz)


def _perp_within(g: ScalarProduct, span: SubspaceBasis, x: np.ndarray) -> SubspaceBasis:
    """Basis of {v in span : g(v, x) = 0}."""
    weights = span.vectors @ g.components @ x
    combos = nullspace(weights[None, :], RANK_RTOL)
    return SubspaceBasis.from_vectors(g, combos @ span.vectors)


def r_star(
    R: CurvatureTensor,
    g: ScalarProduct,
    F: FibrationModel,
    x,
) -> JacobiOperator:
    """Base-space Jacobi operator of a unit spacelike horizontal x, on x-perp in H."""
    xv = _require_horizontal(F, x, "base of Rstar")
    q = inner(g, xv, xv)
    if abs(q - 1.0) > 1e-8:
        raise CausalCharacterError(f"Rstar base must be unit spacelike: g(x,x) = {q:.6e}")
    domain = _perp_within(g, F.horizontal, xv)
    Q = _jacobi_form(R, xv)
    a_x = [oneill_A(F, xv, b) for b in domain.vectors]
    a_to_x = [oneill_A(F, b, xv) for b in domain.vectors]
    k = domain.dim
    B = np.empty((k, k))
    for i in range(k):
        for j in range(k):
            B[i, j] = (
                float(domain.vectors[j] @ Q @ domain.vectors[i])
                + 2.0 * inner(g, a_x[j], a_x[i])
                - inner(g, a_to_x[j], a_x[i])
            )
    B = 0.5 * (B + B.T)
    matrix = np.linalg.solve(domain.gram, B)
    return JacobiOperator(base=xv, domain=domain, matrix=matrix, metric_on_domain=domain.gram)


@dataclass(frozen=True)
class ShiftCheck:
    """Residual of the rank-one shift identity, with the invariance defect of R_x on V."""

    residual: float
    v_leak: float
    sigma: float


def shift_identity_residual(
    R: CurvatureTensor,
    S: GffStructure,
    F: FibrationModel,
    x,
    y,
) -> ShiftCheck:
    """Check Rstar_x(y) = R_x(y)|_V + 3 sigma g(y, phi x) phi x on V = x-perp in Im(phi).

    Both sides are projected onto V (the transfer operator can leak into the
    extra horizontal directions of the tau kind, and a generic algebraic
    curvature tensor does not leave V invariant); the defect of R_x(y)
    against V is returned separately, not folded into the residual.
    """
    g = S.g
    xv = _require_horizontal(F, x, "base of the shift identity")
    yv = np.asarray(y, dtype=float).reshape(-1)
    V = _perp_within(g, phi_image_frame(S), xv)

    y_coords = np.linalg.solve(V.gram, V.vectors @ g.components @ yv)
    if np.linalg.norm(yv - y_coords @ V.vectors) > 1e-8 * max(np.linalg.norm(yv), 1.0):
        raise ValueError("y must lie in x-perp within Im(phi)")

    lhs = np.linalg.solve(V.gram, np.array([r_star_form(R, g, F, xv, yv, v) for v in V.vectors]))

    jac = operator_apply(R, g, xv, yv, xv)
    jac_coords = np.linalg.solve(V.gram, V.vectors @ g.components @ jac)
    v_leak = float(np.linalg.norm(jac - jac_coords @ V.vectors))

    phix = S.phi @ xv
    phix_coords = np.linalg.solve(V.gram, V.vectors @ g.components @ phix)
    shift_coords = 3.0 * F.sigma * inner(g, yv, phix) * phix_coords

    diff = lhs - jac_coords - shift_coords
    residual = float(np.sqrt(abs(diff @ V.gram @ diff)))
    return ShiftCheck(residual=residual, v_leak=v_leak, sigma=F.sigma)


def base_osserman_check(
    R: CurvatureTensor,
    S: GffStructure,
    F: FibrationModel,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    tol: float = DEFAULT_CONSTANCY_TOL,
    grouping_tol: float = DEFAULT_GROUPING_TOL,
) -> DecisionReport:
    """Pointwise Osserman condition of the complex-type base, through the transfer operator."""
    if F.kind not in (FibrationKind.PI_FULL, FibrationKind.PI_PRIME):
        raise ValueError(f"base Osserman check applies to pi_full/pi_prime, got {F.kind.value}")
    sphere = sample_phi_celestial(S, samples, seed).points
    records = []
    for x in sphere:
        try:
            records.append(SampleRecord(base=x, spectrum=spectrum(r_star(R, S.g, F, x), grouping_tol)))
        except (SpectrumError, GeometryError) as exc:
            records.append(SampleRecord(base=x, spectrum=None, error=str(exc)))
    return decide_constancy(
        f"base-osserman[{F.kind.value}]", records, seed, tol, grouping_tol,
        notes={"sigma": F.sigma},
    )


def _base_null_operator(
    R: CurvatureTensor,
    g: ScalarProduct,
    F: FibrationModel,
    x: np.ndarray,
) -> JacobiOperator:
    """Null Jacobi operator of u = xi_1 + x on the base model, via the transfer pairing.

    Representatives of the quotient of u-perp within the horizontal space are
    the nondegenerate eigendirections of the restricted Gram, exactly as in
    the ambient null quotient.
    """
    S = F.structure
    u = S.xi[0] + x
    perp = _perp_within(g, F.horizontal, u)
    evals, evecs = np.linalg.eigh(perp.gram)
    tol = RANK_RTOL * max(float(np.abs(evals).max()), 1.0)
    nonzero = np.abs(evals) > tol
    if int(np.sum(~nonzero)) != 1:
        raise GeometryError("base null quotient: restricted Gram kernel is not one-dimensional")
    reps = SubspaceBasis.from_vectors(g, evecs[:, nonzero].T @ perp.vectors)

    Q = _jacobi_form(R, u)
    a_u = [oneill_A(F, u, r) for r in reps.vectors]
    a_to_u = [oneill_A(F, r, u) for r in reps.vectors]
    k = reps.dim
    B = np.empty((k, k))
    for i in range(k):
        for j in range(k):
            B[i, j] = (
                float(reps.vectors[j] @ Q @ reps.vectors[i])
                + 2.0 * inner(g, a_u[j], a_u[i])
                - inner(g, a_to_u[j], a_u[i])
            )
    B = 0.5 * (B + B.T)
    matrix = np.linalg.solve(reps.gram, B)
    return JacobiOperator(base=u, domain=reps, matrix=matrix, metric_on_domain=reps.gram)


def base_null_osserman_check(
    R: CurvatureTensor,
    S: GffStructure,
    F: FibrationModel,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    tol: float = DEFAULT_CONSTANCY_TOL,
    grouping_tol: float = DEFAULT_GROUPING_TOL,
) -> DecisionReport:
    """Null Osserman condition of the Lorentz-contact base w.r.t. its timelike direction.

    The base is modeled on the horizontal space of the tau splitting, where
    the celestial sphere of the projected timelike direction coincides with
    the phi-celestial sphere upstairs; null directions are xi_1 + x and their
    quotient operators are assembled from the transfer pairing.
    """
    if F.kind is not FibrationKind.TAU:
        raise ValueError(f"base null Osserman check applies to the tau kind, got {F.kind.value}")
    sphere = sample_phi_celestial(S, samples, seed).points
    records = []
    for x in sphere:
        try:
            op = _base_null_operator(R, S.g, F, x)
            records.append(SampleRecord(base=op.base, spectrum=spectrum(op, grouping_tol)))
        except (SpectrumError, GeometryError) as exc:
            records.append(SampleRecord(base=S.xi[0] + x, spectrum=None, error=str(exc)))
    return decide_constancy(
        "base-null-osserman[tau]", records, seed, tol, grouping_tol,
        notes={"sigma": F.sigma},
    )


def eigenvector_hypothesis_residual(R: CurvatureTensor, S: GffStructure, x) -> float:
    """Relative misalignment of R_x(phi x) against phi x (0 when phi x is an eigenvector)."""
    g = S.g
    xv = np.asarray(x, dtype=float).reshape(-1)
    phix = S.phi @ xv
    w = operator_apply(R, g, xv, phix, xv)
    lam = inner(g, w, phix) / inner(g, phix, phix)
    return float(np.linalg.norm(w - lam * phix) / max(np.linalg.norm(w), 1.0))


def _sigma_shift_matrix_residual(
    R: CurvatureTensor,
    S: GffStructure,
    F: FibrationModel,
    x: np.ndarray,
) -> float:
    """Max-norm defect of proj_V Rstar|_V = proj_V R_x|_V + 3 sigma (rank-one on phi x).

    Holds algebraically for every curvature tensor; a violation indicates an
    internal error or a tampered shift coefficient.
    """
    g = S.g
    V = _perp_within(g, phi_image_frame(S), x)
    k = V.dim
    lhs = np.empty((k, k))
    for j in range(k):
        col = np.array([r_star_form(R, g, F, x, V.vectors[j], V.vectors[i]) for i in range(k)])
        lhs[:, j] = np.linalg.solve(V.gram, col)
    jac_cols = np.array([operator_apply(R, g, x, v, x) for v in V.vectors]).T
    rhs = np.linalg.solve(V.gram, V.vectors @ g.components @ jac_cols)
    phix = S.phi @ x
    phix_coords = np.linalg.solve(V.gram, V.vectors @ g.components @ phix)
    weights = np.array([inner(g, v, phix) for v in V.vectors])
    rank_one = np.outer(phix_coords, weights)
    scale = max(1.0, float(np.abs(rhs).max()), abs(3.0 * F.sigma))
    return float(np.abs(lhs - rhs - 3.0 * F.sigma * rank_one).max()) / scale


@dataclass
class TheoremReport:
    """Three-way equivalence report: phi-null, base Osserman, base null Osserman."""

    phi_null: PhiNullReport
    base: DecisionReport
    base_null: DecisionReport
    hypothesis_holds: bool
    hypothesis_residual: float
    sigma_identity_residual: float
    internal_consistency_ok: bool
    agreement_required: bool
    agreement_scope: str | None
    agreement_holds: bool | None
    s: int
    samples: int
    seed: int
    tol: float
    grouping_tol: float
    sigma: dict

    @property
    def verdicts(self) -> dict:
        return {
            "phi_null_osserman": self.phi_null.direct.passed,
            "base_osserman": self.base.passed,
            "base_null_osserman": self.base_null.passed,
        }

    def to_dict(self) -> dict:
        return {
            "verdicts": self.verdicts,
            "hypothesis_flag": self.hypothesis_holds,
            "per_sample_spectra": {
                "phi_null_direct": [r.to_dict() for r in self.phi_null.direct.records],
                "phi_null_quotient": [r.to_dict() for r in self.phi_null.quotient.records],
                "base_osserman": [r.to_dict() for r in self.base.records],
                "base_null_osserman": [r.to_dict() for r in self.base_null.records],
            },
            "residual_maxima": {
                "hypothesis": self.hypothesis_residual,
                "shift_identity": self.sigma_identity_residual,
            },
            "seeds": {"sampling": self.seed},
            "tolerances": {
                "constancy": self.tol,
                "grouping": self.grouping_tol,
                "identity": IDENTITY_ATOL,
            },
            "agreement": {
                "required": self.agreement_required,
                "scope": self.agreement_scope,
                "holds": self.agreement_holds,
            },
            "sigma": self.sigma,
            "samples": self.samples,
            "s": self.s,
            "internal_consistency": "ok" if self.internal_consistency_ok else "failed",
        }


def theorem_equivalence_report(
    R: CurvatureTensor,
    S: GffStructure,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    tol: float = DEFAULT_CONSTANCY_TOL,
    grouping_tol: float = DEFAULT_GROUPING_TOL,
    pi_fibration: FibrationModel | None = None,
    tau_fibration: FibrationModel | None = None,
) -> TheoremReport:
    """Evaluate the three transfer verdicts and their agreement contract.

    When the eigenvector hypothesis holds (phi x is an eigenvector of R_x at
    every sample) the three verdicts must agree. At s = 2 the phi-null and
    base-Osserman verdicts are expected to agree even without the hypothesis;
    that expectation is recorded in the agreement scope, but it presumes
    structure-compatible curvature -- an arbitrary algebraic tensor can break
    it (with n = 1 the transfer domain is one-dimensional and its spectrum is
    trivially constant), so a violation there is reported, not escalated.
    Outside those regimes the verdicts are reported without an agreement
    claim. The rank-one shift identity is checked in matrix form at every
    sample as an internal-consistency sentinel.
    """
    if S.s < 2:
        raise ValueError(f"theorem report requires s >= 2, got s = {S.s}")
    F_pi = pi_fibration if pi_fibration is not None else make_fibration(S, FibrationKind.PI_FULL)
    F_tau = tau_fibration if tau_fibration is not None else make_fibration(S, FibrationKind.TAU)

    sphere = sample_phi_celestial(S, samples, seed).points
    hyp_residual = max(eigenvector_hypothesis_residual(R, S, x) for x in sphere)
    hypothesis_holds = hyp_residual <= tol

    phi_null = is_phi_null_osserman_wrt(R, S, samples, seed, tol, grouping_tol)
    base = base_osserman_check(R, S, F_pi, samples, seed, tol, grouping_tol)
    base_null = base_null_osserman_check(R, S, F_tau, samples, seed, tol, grouping_tol)

    sigma_residual = 0.0
    for x in sphere:
        for F in (F_pi, F_tau):
            sigma_residual = max(sigma_residual, _sigma_shift_matrix_residual(R, S, F, x))
    consistency_ok = sigma_residual < IDENTITY_ATOL

    a = phi_null.direct.passed
    b = base.passed
    c = base_null.passed
    if hypothesis_holds:
        required, scope, holds = True, "all-three", (a == b == c)
    elif S.s == 2:
        required, scope, holds = True, "phi-null-vs-base", (a == b)
    else:
        required, scope, holds = False, None, None

    return TheoremReport(
        phi_null=phi_null,
        base=base,
        base_null=base_null,
        hypothesis_holds=hypothesis_holds,
        hypothesis_residual=hyp_residual,
        sigma_identity_residual=sigma_residual,
        internal_consistency_ok=consistency_ok,
        agreement_required=required,
        agreement_scope=scope,
        agreement_holds=holds,
        s=S.s,
        samples=samples,
        seed=seed,
        tol=tol,
        grouping_tol=grouping_tol,
        sigma={"pi_full": F_pi.sigma, "tau": F_tau.sigma},
    )


@dataclass
class RemarkSample:
    base: list
    phi_sectional: float
    base_sectional: float
    a_norm_sq: float
    identity_residual: float
    necessary_ok: bool

    def to_dict(self) -> dict:
        return {
            "base": self.base,
            "phi_sectional": self.phi_sectional,
            "base_sectional": self.base_sectional,
            "a_norm_sq": self.a_norm_sq,
            "identity_residual": self.identity_residual,
            "necessary_ok": self.necessary_ok,
        }


@dataclass
class RemarkReport:
    """Sectional-curvature transfer identity and the necessary-condition flags."""

    kind: RemarkKind
    fibration_kind: FibrationKind
    target: float
    samples: list[RemarkSample]
    identity_residual_max: float
    identity_passed: bool
    necessary_all: bool
    seed: int
    tol: float

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "fibration": self.fibration_kind.value,
            "target": self.target,
            "identity_residual_max": self.identity_residual_max,
            "identity_passed": self.identity_passed,
            "necessary_condition_all": self.necessary_all,
            "tolerances": {"identity": IDENTITY_ATOL, "necessary": self.tol},
            "seeds": {"sampling": self.seed},
            "per_sample": [s.to_dict() for s in self.samples],
        }


def remark_sectional_conditions(
    R: CurvatureTensor,
    S: GffStructure,
    kind: RemarkKind,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    tol: float = DEFAULT_CONSTANCY_TOL,
) -> RemarkReport:
    """Check k(x, phi x) = k_base(x, phi x) - 3 g(A_x phi x, A_x phi x) on sampled x.

    Also flags, per sample, the necessary condition for the base to be the
    relevant contact space form: phi-sectional curvature 1 - 3(s-3) for a
    Riemannian contact base, -1 - 3(s-1) for a Lorentzian one.
    """
    if S.s < 2:
        raise ValueError("remark conditions require s >= 2")
    if kind is RemarkKind.SASAKI_BASE:
        F = make_fibration(S, FibrationKind.REMARK_SASAKI)
        target = 1.0 - 3.0 * (S.s - 3)
    else:
        F = make_fibration(S, FibrationKind.TAU)
        target = -1.0 - 3.0 * (S.s - 1)

    g = S.g
    out: list[RemarkSample] = []
    for x in sample_phi_celestial(S, samples, seed).points:
        phix = S.phi @ x
        k_total = sectional_curvature(R, g, x, phix)
        delta = inner(g, x, x) * inner(g, phix, phix) - inner(g, x, phix) ** 2
        k_base = r_star_form(R, g, F, x, phix, phix) / delta
        a_vec = oneill_A(F, x, phix)
        a_sq = inner(g, a_vec, a_vec)
        residual = abs(k_total - (k_base - 3.0 * a_sq))
        out.append(
            RemarkSample(
                base=[float(v) for v in x],
                phi_sectional=float(k_total),
                base_sectional=float(k_base),
                a_norm_sq=float(a_sq),
                identity_residual=float(residual),
                necessary_ok=bool(abs(k_total - target) < tol),
            )
        )
    worst = max(s.identity_residual for s in out)
    return RemarkReport(
        kind=kind,
        fibration_kind=F.kind,
        target=target,
        samples=out,
        identity_residual_max=worst,
        identity_passed=worst < IDENTITY_ATOL,
        necessary_all=all(s.necessary_ok for s in out),
        seed=seed,
        tol=tol,
    )


@dataclass(frozen=True, eq=False)
class BaseStructure:
    """The pointwise shadow of the base space: the horizontal carrier with restricted data."""

    carrier: SubspaceBasis
    metric: np.ndarray
    complex_structure: np.ndarray | None
    contact: GffStructure | None


def _carrier_coordinates(g: ScalarProduct, carrier: SubspaceBasis, vectors: np.ndarray) -> np.ndarray:
    return np.linalg.solve(carrier.gram, carrier.vectors @ g.components @ np.atleast_2d(vectors).T)


def base_structure(F: FibrationModel) -> BaseStructure:
    """Restrict the structure tensors to the horizontal carrier.

    For the complex-type kinds the restricted phi must square to -identity;
    for tau the restricted tuple must be a valid s = 1 Lorentzian structure.
    A failed assertion indicates a corrupted input structure.
    """
    S = F.structure
    g = S.g
    carrier = F.horizontal
    metric = carrier.gram
    if F.kind in (FibrationKind.PI_FULL, FibrationKind.PI_PRIME):
        # columns of J are the carrier coordinates of phi(h_i)
        J = _carrier_coordinates(g, carrier, (S.phi @ carrier.vectors.T).T)
        defect = float(np.abs(J @ J + np.eye(carrier.dim)).max())
        if defect > 1e-10:
            raise GeometryError(
                f"restricted tensor does not square to -identity (defect {defect:.3e}); "
                "input structure is corrupted"
            )
        return BaseStructure(carrier=carrier, metric=metric, complex_structure=J, contact=None)
    if F.kind is FibrationKind.TAU:
        phi_restricted = _carrier_coordinates(g, carrier, (S.phi @ carrier.vectors.T).T)
        xi_coords = _carrier_coordinates(g, carrier, S.xi[0]).reshape(-1)
        eta_row = carrier.vectors @ S.eta[0]
        contact = GffStructure(
            n=S.n,
            s=1,
            g=ScalarProduct.from_matrix(metric),
            phi=phi_restricted,
            xi=xi_coords[None, :],
            eta=eta_row[None, :],
            epsilon=np.array([S.epsilon[0]]),
        )
        report = validate_gff(contact)
        if not report.passed:
            raise GeometryError(
                "restricted tuple fails the s = 1 structure validation:\n" + report.summary()
            )
        return BaseStructure(carrier=carrier, metric=metric, complex_structure=None, contact=contact)
    raise ValueError(f"base structure is not defined for the {F.kind.value} kind")
