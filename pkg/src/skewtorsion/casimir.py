"""Zero-order part of the Casimir operator and the constants built from it.

For a metric connection with skew torsion T the Casimir operator is

    Omega = Delta_T + (1/8)(3 dT - 2 sigma_T + 2 delta T + Scal),
    Scal  = Scal^g - (3/2) ||T||^2,

so everything here is an endomorphism of the spin module, computed exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .exterior import Form, hodge_star, inner, norm2, sigma_T
from .homogeneous import MetricReductiveAlgebra, codifferential, invariant_d, nomizu_curvature
from .linalg import ExactMatrix
from .scalar import Scalar, as_scalar, format_scalar, rational_sqrt
from .spinrep import SpinEndomorphism, act, exact_spectrum, identity, split_by

_EIGHTH = Scalar(1) / 8


class InsufficientData(ValueError):
    """A record lacks the data an operation needs."""


@dataclass(frozen=True)
class GeometryRecord:
    """Constant-coefficient data of a geometry with skew torsion.

    ``dtorsion`` and ``scal_g`` may be ``None`` when a Lie algebra is given;
    they are then computed from it.
    """

    name: str
    dim: int
    torsion: Form | None
    dtorsion: Form | None = None
    deltatorsion: Form | None = None
    lie: MetricReductiveAlgebra | None = None
    scal_g: Scalar | None = None
    parallel_torsion: bool = False
    naturally_reductive: bool = False
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.naturally_reductive and not self.parallel_torsion:
            raise ValueError(f"{self.name}: naturally reductive implies parallel torsion")
        if self.torsion is not None and self.torsion.dim != self.dim:
            raise ValueError(f"{self.name}: torsion lives in dimension {self.torsion.dim}")

    # resolved data ------------------------------------------------------------

    def require_torsion(self) -> Form:
        if self.torsion is None:
            raise InsufficientData(f"{self.name}: no torsion form stored")
        return self.torsion

    def resolved_dtorsion(self) -> Form:
        if self.dtorsion is not None:
            return self.dtorsion
        if self.lie is None:
            raise InsufficientData(f"{self.name}: dT missing and no Lie data to compute it")
        return invariant_d(self.lie, self.require_torsion())

    def resolved_deltatorsion(self) -> Form:
        if self.deltatorsion is not None:
            return self.deltatorsion
        if self.lie is not None:
            return codifferential(self.lie, self.require_torsion())
        return Form.zero(self.dim)

    def resolved_scal_g(self) -> Scalar:
        if self.scal_g is not None:
            return self.scal_g
        if self.lie is None:
            raise InsufficientData(f"{self.name}: Scal^g missing and no Lie data to compute it")
        return nomizu_curvature(self.lie).scal

    def torsion_norm2(self) -> Scalar:
        return norm2(self.require_torsion())

    def scal(self) -> Scalar:
        """Scalar curvature of the connection with torsion."""
        return self.resolved_scal_g() - self.torsion_norm2() * Scalar(3, 0) / 2


# ---------------------------------------------------------------------------
# zero-order endomorphisms
# ---------------------------------------------------------------------------


def zero_order_general(g: GeometryRecord) -> SpinEndomorphism:
    """Z = (1/8) act(3 dT - 2 sigma_T + 2 delta T) + (1/8) Scal."""
    t = g.require_torsion()
    form = g.resolved_dtorsion() * 3 - sigma_T(t) * 2 + g.resolved_deltatorsion() * 2
    return act(form).scale(_EIGHTH) + g.scal() * _EIGHTH


def zero_order_parallel(g: GeometryRecord) -> SpinEndomorphism:
    """Z' = (1/16)(2 Scal^g + ||T||^2) - (1/4) T^2, valid for parallel torsion."""
    if not g.parallel_torsion:
        raise InsufficientData(f"{g.name}: torsion is not declared parallel")
    t = act(g.require_torsion())
    const = (g.resolved_scal_g() * 2 + g.torsion_norm2()) / 16
    return (t @ t).scale(Scalar(-1) / 4) + const


def kp_constant(g: GeometryRecord) -> Scalar:
    """Shift between (D^{1/3})^2 and the Casimir operator: Scal^g/8 + ||T||^2/16."""
    if not g.naturally_reductive and not g.parallel_torsion:
        raise InsufficientData(f"{g.name}: needs parallel torsion")
    return g.resolved_scal_g() / 8 + g.torsion_norm2() / 16


def dT_equals_2sigma(g: GeometryRecord) -> bool:
    t = g.require_torsion()
    return g.resolved_dtorsion() == sigma_T(t) * 2


def split_constants(z: ExactMatrix, t: ExactMatrix) -> dict:
    """Scalar by which ``z`` acts on each eigenspace of ``t``.

    Raises ``ValueError`` if ``z`` is not a multiple of the identity there.
    """
    out = {}
    for lam, p in split_by(t):
        zp = z @ p
        rank = p.trace().re
        c = (zp.trace().re) / rank
        if zp != p.scale(c) or not zp.trace().is_real():
            raise ValueError(f"endomorphism is not scalar on the {lam}-eigenspace")
        out[lam] = c
    return out


def sasakian_constants(scal_g) -> dict:
    """Z on S_0, S_4, S_-4 for T = 2 e125 + 2 e345 and Scal^g = s.

    Returns ``{0: s/8 + 1/2, 4: s/8 - 7/2, -4: s/8 - 7/2}`` computed from the
    spin representation, not from the closed form.
    """
    t = sasakian_torsion()
    g = GeometryRecord(
        "sasakian", 5, t, dtorsion=sigma_T(t) * 2, scal_g=as_scalar(scal_g),
        parallel_torsion=True,
    )
    consts = split_constants(zero_order_general(g), act(t))
    return {int(float(k)): v for k, v in consts.items()}


def sasakian_torsion() -> Form:
    eta = Form(5, {(5,): 1})
    d_eta = Form(5, {(1, 2): 2, (3, 4): 2})
    return eta ^ d_eta


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralBoundReport:
    condition: str
    left: Scalar
    right: Scalar
    relation: str  # "<=" or ">="

    @property
    def holds(self) -> bool:
        diff = self.left - self.right
        return diff.sign() <= 0 if self.relation == "<=" else diff.sign() >= 0

    def __str__(self):
        verdict = "holds" if self.holds else "fails"
        return f"{self.condition}: {self.left} {self.relation} {self.right} ({verdict})"


def nonnegativity_conditions(g: GeometryRecord) -> tuple[SpectralBoundReport, SpectralBoundReport]:
    """2 Scal^g <= -||T||^2, and 2 Scal^g >= 4 max T^2 - ||T||^2."""
    if not g.parallel_torsion:
        raise InsufficientData(f"{g.name}: torsion is not declared parallel")
    s2 = g.resolved_scal_g() * 2
    n2 = g.torsion_norm2()
    t = act(g.require_torsion())
    top = max(exact_spectrum(t @ t))
    return (
        SpectralBoundReport("2 Scal^g <= -||T||^2", s2, -n2, "<="),
        SpectralBoundReport("2 Scal^g >= 4 T^2 - ||T||^2", s2, top * 4 - n2, ">="),
    )


def friedrich_bound(n: int, scal_min, t_spec) -> SpectralBoundReport:
    """max mu^2 over Spec(T) against (4n/(n-1)) Scal_min."""
    if n < 2:
        raise ValueError("dimension must be at least 2")
    top = max((as_scalar(m) * as_scalar(m) for m in t_spec), default=Scalar(0))
    right = as_scalar(scal_min) * Scalar(4 * n) / (n - 1)
    return SpectralBoundReport("max mu^2 >= 4n/(n-1) Scal_min", top, right, ">=")


# ---------------------------------------------------------------------------
# G2
# ---------------------------------------------------------------------------

G2_BLADES = (
    ((1, 2, 7), 1), ((1, 3, 5), 1), ((1, 4, 6), -1), ((2, 3, 6), -1),
    ((2, 4, 5), -1), ((3, 4, 7), 1), ((5, 6, 7), 1),
)


def g2_form() -> Form:
    """The G2 3-form e127 + e135 - e146 - e236 - e245 + e347 + e567."""
    return Form(7, dict(G2_BLADES))


def g2_characteristic_torsion(omega3: Form, d_omega3: Form) -> tuple[Form, Scalar]:
    """Torsion T = -*d(omega3) + (1/6)(d omega3, *omega3) omega3 and Scal^g.

    Scal^g = (1/18)(d omega3, *omega3)^2 - (1/2)||T||^2, cross-checked against
    2 (T, omega3)^2 - (1/2)||T||^2.
    """
    if omega3.dim != 7 or d_omega3.dim != 7:
        raise ValueError("G2 structures live in dimension 7")
    c = inner(d_omega3, hodge_star(omega3))
    t = -hodge_star(d_omega3) + omega3 * (c / 6)
    half = norm2(t) / 2
    scal = c * c / 18 - half
    alt = inner(t, omega3) * inner(t, omega3) * 2 - half
    if scal != alt:
        raise ValueError(f"scalar curvature formulas disagree: {scal} vs {alt}")
    return t, scal


@dataclass(frozen=True)
class Interval:
    lo: Scalar
    hi: Scalar

    def __str__(self):
        if self.lo == self.hi:
            return f"{{{self.lo}}}"
        return f"[{self.lo}, {self.hi}]"


def g2_kernel_window(a, mu) -> list[Interval]:
    """Dirac eigenvalues lambda allowed in ker(Omega) on the T = mu branch.

    Nearly parallel case: |lambda + mu/4| <= 7a/12 and |lambda| >= 7a/8.
    """
    a, mu = as_scalar(a), as_scalar(mu)
    if a.sign() <= 0:
        raise ValueError("a must be positive")
    centre = -mu / 4
    radius = a * Scalar(7) / 12
    lo, hi = centre - radius, centre + radius
    c = a * Scalar(7) / 8
    out = []
    if lo <= -c:
        out.append(Interval(lo, min(hi, -c)))
    if hi >= c:
        out.append(Interval(max(lo, c), hi))
    return out


def killing_casimir_eigenvalue(dirac_eigenvalue, torsion_eigenvalue, kp) -> Scalar:
    """Omega on a joint eigenspinor: (lambda + mu/4)^2 - kp."""
    lam, mu, kp = as_scalar(dirac_eigenvalue), as_scalar(torsion_eigenvalue), as_scalar(kp)
    d = lam + mu / 4
    return d * d - kp


def parallel_spinor_annihilation(g: GeometryRecord, mu0) -> bool:
    """True iff Z vanishes on the whole mu0-eigenspace of act(T)."""
    mu0 = as_scalar(mu0)
    t = act(g.require_torsion())
    for lam, p in split_by(t):
        if lam == mu0:
            return (zero_order_general(g) @ p).is_zero()
    raise ValueError(f"{mu0} is not an eigenvalue of the torsion")


# ---------------------------------------------------------------------------
# three-dimensional example
# ---------------------------------------------------------------------------


def three_dim_casimir(a, scal_g) -> tuple[Scalar, Scalar, Scalar]:
    """Coefficients (c2, c1, c0) of Omega = c2 (D^g)^2 + c1 D^g + c0 for T = 2a e123.

    With e123 acting as +1 the middle coefficient is +a; the opposite spin
    module flips it.
    """
    a = as_scalar(a)
    t = Form(3, {(1, 2, 3): a * 2})
    m = act(t)
    tau = m[0, 0]
    if m != identity(3).scale(tau) or not tau.is_real():
        raise ValueError("torsion does not act as a real scalar")
    tau = tau.re
    # (D^{1/3})^2 = (D^g + tau/4)^2;  dT = sigma_T = delta T = 0 in dimension 3
    c0 = tau * tau / 16 - as_scalar(scal_g) / 8 - norm2(t) / 16
    return Scalar(1), tau / 2, c0


# ---------------------------------------------------------------------------
# Einstein-Sasakian gap
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GapResult:
    mu_min: Scalar
    feasible: bool
    window: Interval
    gap_rational: Scalar
    gap_radicand: Scalar  # gap = gap_rational - sqrt(gap_radicand)

    @property
    def gap(self) -> float:
        return float(self.gap_rational) - math.sqrt(float(self.gap_radicand))

    def gap_text(self) -> str:
        r = self.gap_radicand
        root = rational_sqrt(r.rat) if r.is_rational() else None
        if root is not None:
            return format_scalar(self.gap_rational - Scalar(root))
        return f"{format_scalar(self.gap_rational)} - sqrt({format_scalar(r)})"

    def __str__(self):
        verdict = "feasible" if self.feasible else "infeasible"
        return f"{verdict}; gap = {self.gap_text()} ≈ {self.gap:.4f}"


def einstein_sasakian_gap(mu_min) -> GapResult:
    """Kernel feasibility and second-eigenvalue bound on S_4 + S_-4.

    A kernel function needs Delta f = mu f, i xi f = lambda f with
    lambda^2 <= mu and 4(mu + lambda) = 3, so (3/4 - mu)^2 <= mu, i.e.
    mu in [1/4, 9/4].  Off the kernel, Omega >= mu - sqrt(mu) - 3/4, which
    increases for mu >= 1/4.
    """
    mu_min = as_scalar(mu_min)
    if not mu_min.is_rational():
        raise ValueError("mu_min must be rational")
    if mu_min.sign() < 0:
        raise ValueError("mu_min must be non-negative")
    lo, hi = Scalar(1) / 4, Scalar(9) / 4
    feasible = mu_min <= hi
    start = max(mu_min, lo)
    return GapResult(mu_min, feasible, Interval(lo, hi), start - Scalar(3) / 4, start)


def sasakian_window_check(mu) -> bool:
    """Is mu admissible: exists lambda with lambda^2 <= mu and 4(mu+lambda) = 3."""
    mu = as_scalar(mu)
    lam = Scalar(3) / 4 - mu
    return (lam * lam) <= mu


__all__ = [
    "GeometryRecord",
    "InsufficientData",
    "SpectralBoundReport",
    "GapResult",
    "Interval",
    "zero_order_general",
    "zero_order_parallel",
    "kp_constant",
    "dT_equals_2sigma",
    "split_constants",
    "sasakian_constants",
    "sasakian_torsion",
    "nonnegativity_conditions",
    "friedrich_bound",
    "g2_form",
    "g2_characteristic_torsion",
    "g2_kernel_window",
    "killing_casimir_eigenvalue",
    "parallel_spinor_annihilation",
    "three_dim_casimir",
    "einstein_sasakian_gap",
    "sasakian_window_check",
]
