"""Built-in geometries, their expected values, and the verification runner."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import casimir as cz
from .casimir import GeometryRecord, InsufficientData
from .exterior import Form, form_from_json, form_to_json, format_form, hodge_star, norm2, sigma_T, wedge
from .homogeneous import (
    NotNaturallyReductive,
    MetricReductiveAlgebra,
    canonical_torsion,
    codifferential,
    heisenberg_algebra,
    heisenberg_group_algebra,
    invariant_d,
    nomizu_curvature,
    stiefel_algebra,
)
from .linalg import ExactMatrix, SpectrumError
from .scalar import ComplexScalar, Scalar, as_scalar, format_scalar, parse_scalar
from .spinrep import act, exact_spectrum, identity, split_by
from . import uea

DEFAULT_TOL = 1e-9
GAP_TOL = 1e-12
DEFAULT_Y_SAMPLES = (Fraction(1, 3), Fraction(1, 2), Fraction(3, 4))


# ---------------------------------------------------------------------------
# entries and reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    """One named assertion.

    ``kind`` selects the comparison: ``exact`` (==), ``multiset`` (eigenvalues
    compared as a multiset, hence independent of basis order), ``float``
    (absolute tolerance).  ``spectral`` checks extract eigenvalues in floating
    point before exact certification and report the tolerance used there.
    """

    name: str
    compute: Callable
    anchor: str
    kind: str = "exact"
    spectral: bool = False
    tolerance: float | None = None


@dataclass(frozen=True)
class CatalogEntry:
    record: GeometryRecord
    checks: tuple
    expected: dict
    description: str = ""

    def __post_init__(self):
        names = [c.name for c in self.checks]
        if len(set(names)) != len(names):
            raise ValueError(f"{self.name}: duplicate assertion names")
        if set(names) != set(self.expected):
            missing = set(names) ^ set(self.expected)
            raise ValueError(f"{self.name}: checks and expected values differ on {sorted(missing)}")
        for c in self.checks:
            if not c.anchor.strip():
                raise ValueError(f"{self.name}: assertion {c.name} has no anchor")
            if c.kind not in ("exact", "multiset", "float"):
                raise ValueError(f"{self.name}: unknown comparison kind {c.kind}")

    @property
    def name(self) -> str:
        return self.record.name


@dataclass(frozen=True)
class AssertionResult:
    name: str
    status: str  # pass | fail | skipped
    computed: str
    expected: str
    tolerance: float
    anchor: str
    detail: str = ""

    def to_json(self) -> dict:
        out = {
            "assertion": self.name,
            "status": self.status,
            "computed": self.computed,
            "expected": self.expected,
            "tolerance": self.tolerance,
            "anchor": self.anchor,
        }
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class VerificationReport:
    name: str
    results: tuple = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    @property
    def overall(self) -> str:
        return "pass" if self.passed else "fail"

    def failures(self) -> list:
        return [r for r in self.results if r.status == "fail"]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "overall": self.overall,
            "assertions": [r.to_json() for r in sorted(self.results, key=lambda r: r.name)],
        }


def reports_to_json(reports) -> str:
    reports = sorted(reports, key=lambda r: r.name)
    doc = {
        "overall": "pass" if all(r.passed for r in reports) else "fail",
        "entries": [r.to_json() for r in reports],
    }
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)


def render(value) -> str:
    """Stable text for a computed or expected value."""
    if value is None:
        return "n/a"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Scalar):
        return format_scalar(value)
    if isinstance(value, ComplexScalar):
        return format_scalar(value.re) if value.is_real() else str(value)
    if isinstance(value, Form):
        return format_form(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return "(" + ", ".join(render(v) for v in value) + ")"
    if isinstance(value, list):
        # multisets: display in a basis-independent order
        try:
            items = sorted(value, key=float)
        except (TypeError, ValueError):
            items = sorted(value, key=render)
        return "[" + ", ".join(render(v) for v in items) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {render(v)}" for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))) + "}"
    return str(value)


def _matches(check: Check, computed, expected, tol: float) -> bool:
    if check.kind == "multiset":
        return Counter(computed) == Counter(expected)
    if check.kind == "float":
        return abs(float(computed) - float(expected)) <= tol
    return computed == expected


def verify(entry: CatalogEntry, tolerance: float = DEFAULT_TOL) -> VerificationReport:
    """Run every assertion of ``entry``; failures become report lines."""
    results = []
    for check in entry.checks:
        expected = entry.expected[check.name]
        if check.tolerance is not None:
            tol = check.tolerance
        else:
            tol = tolerance if check.spectral else 0.0
        try:
            computed = check.compute(entry.record, tolerance)
        except InsufficientData as exc:
            results.append(AssertionResult(check.name, "skipped", "", render(expected), tol, check.anchor, str(exc)))
            continue
        except (SpectrumError, ValueError, ArithmeticError) as exc:
            results.append(AssertionResult(check.name, "fail", "", render(expected), tol, check.anchor,
                                           f"{type(exc).__name__}: {exc}"))
            continue
        ok = _matches(check, computed, expected, tol)
        results.append(AssertionResult(check.name, "pass" if ok else "fail", render(computed),
                                       render(expected), tol, check.anchor))
    return VerificationReport(entry.name, tuple(results))


# ---------------------------------------------------------------------------
# shared computations
# ---------------------------------------------------------------------------


def _s(x) -> Scalar:
    return as_scalar(x)


def _spec(m: ExactMatrix, tol: float) -> list:
    return exact_spectrum(m, tol)


def _repeat(*pairs) -> list:
    out = []
    for value, count in pairs:
        out.extend([_s(value)] * count)
    return out


def torsion_spectrum(g: GeometryRecord, tol: float = DEFAULT_TOL) -> list:
    return _spec(act(g.require_torsion()), tol)


def dtorsion_spectrum(g: GeometryRecord, tol: float = DEFAULT_TOL) -> list:
    return _spec(act(g.resolved_dtorsion()), tol)


def sigma_spectrum(g: GeometryRecord, tol: float = DEFAULT_TOL) -> list:
    return _spec(act(sigma_T(g.require_torsion())), tol)


def casimir_zero_spectrum(g: GeometryRecord, tol: float = DEFAULT_TOL) -> list:
    if "endomorphisms" in g.data and g.torsion is None:
        return _data_casimir_zero(g)
    return _spec(cz.zero_order_general(g), tol)


OPERATORS = {
    "torsion": torsion_spectrum,
    "dT": dtorsion_spectrum,
    "sigma": sigma_spectrum,
    "casimir-zero": casimir_zero_spectrum,
}


def _sign_on(z: ExactMatrix, t: ExactMatrix) -> dict:
    return {format_scalar(k): format_scalar(v) for k, v in cz.split_constants(z, t).items()}


# generic assertions usable from JSON geometry files
GENERIC = {
    "torsion_spectrum": ("multiset", True, torsion_spectrum),
    "dT_spectrum": ("multiset", True, dtorsion_spectrum),
    "sigma_spectrum": ("multiset", True, sigma_spectrum),
    "casimir_zero_spectrum": ("multiset", True, casimir_zero_spectrum),
    "scal_g": ("exact", False, lambda g, tol: g.resolved_scal_g()),
    "torsion_norm2": ("exact", False, lambda g, tol: g.torsion_norm2()),
    "kp_constant": ("exact", False, lambda g, tol: cz.kp_constant(g)),
    "dT_equals_2sigma": ("exact", False, lambda g, tol: cz.dT_equals_2sigma(g)),
    "dtorsion": ("exact", False, lambda g, tol: g.resolved_dtorsion()),
    "deltatorsion": ("exact", False, lambda g, tol: g.resolved_deltatorsion()),
}


def _generic(name: str, anchor: str) -> Check:
    kind, spectral, fn = GENERIC[name]
    return Check(name, fn, anchor, kind, spectral)


def _naturally_reductive_checks(anchor: str) -> list:
    """Re-derive dT = 2 sigma_T and delta T = 0 from the Lie data."""
    return [
        Check("nr: dT = 2 sigma_T", lambda g, tol: invariant_d(g.lie, g.torsion) == sigma_T(g.torsion) * 2, anchor),
        Check("nr: delta T = 0", lambda g, tol: codifferential(g.lie, g.torsion).is_zero(), anchor),
    ]


# ---------------------------------------------------------------------------
# Sasakian family
# ---------------------------------------------------------------------------

_SASAKIAN_T = cz.sasakian_torsion()
_E1234_5 = Form(5, {(1, 2, 3, 4): 1})


def _sasakian_record(name: str, scal_g, lie=None, naturally_reductive=False) -> GeometryRecord:
    return GeometryRecord(
        name, 5, _SASAKIAN_T,
        dtorsion=None if lie is not None else sigma_T(_SASAKIAN_T) * 2,
        lie=lie,
        scal_g=None if lie is not None else _s(scal_g),
        parallel_torsion=True,
        naturally_reductive=naturally_reductive,
    )


def _sasakian_checks(s) -> tuple[list, dict]:
    anchor = "Sasakian torsion eta ^ d eta in dimension 5"
    checks = [
        Check("T^2 = 8 - 8 e1234",
              lambda g, tol: act(g.torsion) @ act(g.torsion) == identity(5).scale(Scalar(8)) - act(_E1234_5).scale(Scalar(8)),
              anchor),
        _generic("torsion_spectrum", anchor),
        Check("e1234 on torsion eigenspaces", lambda g, tol: _sign_on(act(_E1234_5), act(g.torsion)), anchor),
        Check("Z on torsion eigenspaces",
              lambda g, tol: _sign_on(cz.zero_order_general(g), act(g.torsion)),
              "zero-order constants s/8 + 1/2 on S_0 and s/8 - 7/2 on S_4, S_-4"),
        _generic("scal_g", "scalar curvature of the Sasakian metric"),
    ]
    s = _s(s)
    expected = {
        "T^2 = 8 - 8 e1234": True,
        "torsion_spectrum": _repeat((-4, 1), (0, 2), (4, 1)),
        "e1234 on torsion eigenspaces": {"-4": "-1", "0": "1", "4": "-1"},
        "Z on torsion eigenspaces": {
            "-4": format_scalar(s / 8 - Scalar(7) / 2),
            "0": format_scalar(s / 8 + Scalar(1) / 2),
            "4": format_scalar(s / 8 - Scalar(7) / 2),
        },
        "scal_g": s,
    }
    return checks, expected


def heisenberg_entry() -> CatalogEntry:
    L = heisenberg_algebra()
    rec = _sasakian_record("heisenberg5", -4, lie=L, naturally_reductive=True)
    checks, expected = _sasakian_checks(-4)
    anchor = "5-dim Heisenberg group with left-invariant Sasakian structure"
    curv = lambda g: nomizu_curvature(g.lie)
    checks += [
        Check("canonical torsion", lambda g, tol: canonical_torsion(g.lie), anchor),
        Check("d eta", lambda g, tol: invariant_d(heisenberg_group_algebra(), Form(5, {(5,): 1})), anchor),
        Check("Ricci diagonal", lambda g, tol: [curv(g).ricci[i][i] for i in range(5)],
              "eta-Einstein Ricci tensor -2g + 6 eta (x) eta"),
        Check("Ricci off-diagonal vanishes",
              lambda g, tol: all(curv(g).ricci[i][j].is_zero() for i in range(5) for j in range(5) if i != j), anchor),
        _generic("dT_equals_2sigma", anchor),
        _generic("deltatorsion", anchor),
        _generic("kp_constant", "Omega_0 equals Delta_T = (D^{1/3})^2 at Scal^g = -4"),
        Check("Z' = Z", lambda g, tol: cz.zero_order_general(g) == cz.zero_order_parallel(g),
              "parallel torsion form of the zero-order term"),
        Check("non-negativity condition 2 Scal^g <= -||T||^2",
              lambda g, tol: cz.nonnegativity_conditions(g)[0].holds, "non-negativity of the Casimir operator"),
    ]
    checks += _naturally_reductive_checks(anchor)
    expected.update({
        "canonical torsion": _SASAKIAN_T,
        "d eta": Form(5, {(1, 2): 2, (3, 4): 2}),
        "Ricci diagonal": _repeat((-2, 4), (4, 1)),
        "Ricci off-diagonal vanishes": True,
        "dT_equals_2sigma": True,
        "deltatorsion": Form.zero(5),
        "kp_constant": Scalar(0),
        "Z' = Z": True,
        "non-negativity condition 2 Scal^g <= -||T||^2": True,
        "nr: dT = 2 sigma_T": True,
        "nr: delta T = 0": True,
    })
    return CatalogEntry(rec, tuple(checks), expected, "5-dim Heisenberg group, naturally reductive Sasakian")


def sasakian_entry(name: str, s, description: str) -> CatalogEntry:
    rec = _sasakian_record(name, s)
    checks, expected = _sasakian_checks(s)
    return CatalogEntry(rec, tuple(checks), expected, description)


def sasakian_einstein_entry() -> CatalogEntry:
    entry = sasakian_entry("sasakian-einstein", 20, "5-dim Einstein-Sasakian, Scal^g = 20")
    anchor = "Einstein-Sasakian Killing spinors and the Lichnerowicz-Obata bound"
    checks = list(entry.checks) + [
        _generic("kp_constant", anchor),
        Check("Omega on Killing spinors",
              lambda g, tol: cz.killing_casimir_eigenvalue(Scalar(-5) / 2, 4, cz.kp_constant(g)), anchor),
        Check("kernel system at mu_min = 5 infeasible", lambda g, tol: not cz.einstein_sasakian_gap(5).feasible, anchor),
        Check("gap text", lambda g, tol: cz.einstein_sasakian_gap(5).gap_text(), anchor),
        Check("gap value", lambda g, tol: cz.einstein_sasakian_gap(5).gap, anchor, "float", tolerance=GAP_TOL),
        Check("kernel system at mu_min = 0 feasible", lambda g, tol: cz.einstein_sasakian_gap(0).feasible, anchor),
        Check("kernel window inside [0, 3]",
              lambda g, tol: (lambda w: _s(0) <= w.lo and w.hi <= _s(3))(cz.einstein_sasakian_gap(0).window), anchor),
    ]
    expected = dict(entry.expected)
    expected.update({
        "kp_constant": Scalar(3),
        "Omega on Killing spinors": Scalar(-3) / 4,
        "kernel system at mu_min = 5 infeasible": True,
        "gap text": "17/4 - sqrt(5)",
        "gap value": 17 / 4 - 5 ** 0.5,
        "kernel system at mu_min = 0 feasible": True,
        "kernel window inside [0, 3]": True,
    })
    return CatalogEntry(entry.record, tuple(checks), expected, entry.description)


def sasakian_scal28_entry() -> CatalogEntry:
    entry = sasakian_entry("sasakian-scal28", 28, "5-dim Sasakian, boundary case Scal^g = 28")
    anchor = "boundary case: Omega_0 = Delta_T + 4 has trivial kernel"
    checks = list(entry.checks) + [
        Check("Z positive on S_0",
              lambda g, tol: cz.split_constants(cz.zero_order_general(g), act(g.torsion))[Scalar(0)].sign() > 0, anchor),
    ]
    expected = dict(entry.expected)
    expected["Z positive on S_0"] = True
    return CatalogEntry(entry.record, tuple(checks), expected, entry.description)


def sasakian_eta_einstein_entry() -> CatalogEntry:
    entry = sasakian_entry("sasakian-eta-einstein", -4,
                           "5-dim eta-Einstein Sasakian with Ric^g = -2g + 6 eta (x) eta, Scal^g = -4")
    anchor = "eta-Einstein Sasakian at Scal^g = -4: Omega_0 = Delta_T"
    checks = list(entry.checks) + [
        Check("S_0 line annihilated", lambda g, tol: cz.parallel_spinor_annihilation(g, 0), anchor),
    ]
    expected = dict(entry.expected)
    expected["S_0 line annihilated"] = True
    return CatalogEntry(entry.record, tuple(checks), expected, entry.description)


# ---------------------------------------------------------------------------
# Stiefel manifold
# ---------------------------------------------------------------------------


def _stiefel_not_nr(g, tol) -> bool:
    try:
        canonical_torsion(g.lie)
    except NotNaturallyReductive:
        return True
    return False


def _stiefel_square_coeffs(g, tol) -> dict:
    sq = uea.stiefel_square()
    return {
        "M1": sq.coefficient(()),
        "M2": sq.coefficient((uea.STIEFEL_H,)),
        "M3": sq.coefficient((4,)),
        "quadratic": all(sq.coefficient((k, k)) == identity(5).scale(Scalar(-3)) for k in range(5))
        and all(len(w) != 2 or w[0] == w[1] for w in sq.terms),
    }


def _mat(rows) -> ExactMatrix:
    return ExactMatrix(rows)


_I = ComplexScalar(0, 1)
_R3 = Scalar(0, 1)


def stiefel_entry() -> CatalogEntry:
    rec = GeometryRecord("stiefel-v42", 5, _SASAKIAN_T, lie=stiefel_algebra(), parallel_torsion=True)
    checks, expected = _sasakian_checks(20)
    anchor = "Stiefel manifold V_{4,2} = SO(4)/SO(2) as Einstein-Sasakian space"
    sq = "squared Dirac operator D^{1/3} on V_{4,2}"
    ops = "reduced Casimir operators on S_0 and S_4 + S_-4"
    checks += [
        Check("Ricci diagonal", lambda g, tol: [nomizu_curvature(g.lie).ricci[i][i] for i in range(5)], anchor),
        Check("d eta", lambda g, tol: invariant_d(g.lie, Form(5, {(5,): 1})), anchor),
        Check("dtorsion", lambda g, tol: g.resolved_dtorsion(), anchor),
        _generic("deltatorsion", anchor),
        _generic("dT_equals_2sigma", anchor),
        _generic("kp_constant", anchor),
        Check("presentation not naturally reductive", _stiefel_not_nr, anchor),
        Check("S = -(5/8) rho(T)",
              lambda g, tol: uea.build_stiefel_dirac().torsion.scale(Scalar(-5) / 8) == uea.stiefel_s_matrix(), sq),
        Check("M1", lambda g, tol: _stiefel_square_coeffs(g, tol)["M1"], sq),
        Check("M2", lambda g, tol: _stiefel_square_coeffs(g, tol)["M2"], sq),
        Check("M3", lambda g, tol: _stiefel_square_coeffs(g, tol)["M3"], sq),
        Check("second-order part -3 sum X^2", lambda g, tol: _stiefel_square_coeffs(g, tol)["quadratic"], sq),
        Check("reduced operators", lambda g, tol: [f"{op.multiplicity}x {op}" for op in uea.stiefel_casimir(cz.kp_constant(g))],
              ops, "multiset"),
    ]
    z, q = ComplexScalar(0), ComplexScalar(Scalar(9) / 4)
    six = ComplexScalar(0, 6)
    r = ComplexScalar(_R3)
    expected.update({
        "Ricci diagonal": _repeat((4, 5)),
        "d eta": Form(5, {(1, 2): 2, (3, 4): 2}),
        "dtorsion": Form(5, {(1, 2, 3, 4): 8}),
        "deltatorsion": Form.zero(5),
        "dT_equals_2sigma": True,
        "kp_constant": Scalar(3),
        "presentation not naturally reductive": True,
        "S = -(5/8) rho(T)": True,
        "M1": _mat([[z, z, z, z], [z, z, z, z], [z, z, q, z], [z, z, z, q]]),
        "M2": _mat([[six, z, z, z], [z, -six, z, z], [z, z, z, z], [z, z, z, z]]),
        "M3": _mat([[z, z, z, z], [z, z, z, z], [z, z, z, -r], [z, z, r, z]]),
        "second-order part -3 sum X^2": True,
        "reduced operators": [
            "1x -3*sum(X^2) - 3/4 + s3*i*X5",
            "1x -3*sum(X^2) - 3/4 - s3*i*X5",
            "2x -3*sum(X^2) + 3",
        ],
    })
    return CatalogEntry(rec, tuple(checks), expected, "Stiefel manifold V_{4,2} with Scal^g = 20")


# ---------------------------------------------------------------------------
# nearly Kaehler
# ---------------------------------------------------------------------------


def nearly_kaehler_entry() -> CatalogEntry:
    # the torsion below fixes the normalisation a = 2
    a = Scalar(2)
    t = Form(6, {(1, 3, 5): 1, (1, 4, 6): -1, (2, 3, 6): -1, (2, 4, 5): -1})
    omega = Form(6, {(1, 2): 1, (3, 4): 1, (5, 6): 1})
    rec = GeometryRecord("nearly-kaehler-a2", 6, t, dtorsion=wedge(omega, omega) * a,
                         scal_g=Scalar(30), parallel_torsion=True)
    anchor = "6-dim nearly Kaehler manifold with Gray's characteristic connection"
    checks = [
        _generic("torsion_norm2", anchor),
        _generic("dT_equals_2sigma", anchor),
        Check("spectrum 2 dT + Scal",
              lambda g, tol: _spec(act(g.resolved_dtorsion()).scale(Scalar(2)) + g.scal(), tol),
              "endomorphism 16a diag(0,0,1,1,1,1,1,1)", "multiset", True),
        _generic("torsion_spectrum", anchor),
        _generic("casimir_zero_spectrum", anchor),
        _generic("kp_constant", "Omega = (D^{1/3})^2 - 2a"),
        Check("Z' = Z", lambda g, tol: cz.zero_order_general(g) == cz.zero_order_parallel(g), anchor),
    ]
    expected = {
        "torsion_norm2": Scalar(4),
        "dT_equals_2sigma": True,
        "spectrum 2 dT + Scal": _repeat((0, 2), (16 * a, 6)),
        "torsion_spectrum": _repeat((-4, 1), (0, 6), (4, 1)),
        "casimir_zero_spectrum": _repeat((0, 2), (2 * a, 6)),
        "kp_constant": 2 * a,
        "Z' = Z": True,
    }
    return CatalogEntry(rec, tuple(checks), expected, "6-dim nearly Kaehler, a = 2")


# ---------------------------------------------------------------------------
# G2
# ---------------------------------------------------------------------------


def nearly_parallel_record(a) -> GeometryRecord:
    a = _s(a)
    w = cz.g2_form()
    t, scal = cz.g2_characteristic_torsion(w, hodge_star(w) * (-a))
    return GeometryRecord(f"g2-nearly-parallel(a={format_scalar(a)})", 7, t,
                          dtorsion=sigma_T(t) * 2, scal_g=scal, parallel_torsion=True)


def _psi0_torsion_eigenvalue(g, tol) -> Scalar:
    """act(T) on the line where omega3 acts by -7."""
    for lam, p in split_by(act(cz.g2_form())):
        if lam == Scalar(-7):
            tp = act(g.torsion) @ p
            c = tp.trace().re
            if tp != p.scale(c):
                raise ValueError("T is not scalar on the omega3 = -7 line")
            return c
    raise ValueError("omega3 has no -7 eigenvalue")


def g2_nearly_parallel_entry(samples=(1, 2)) -> CatalogEntry:
    anchor = "nearly parallel G2-manifold with d omega3 = -a * (*omega3)"
    kernel = "kernel of Omega coincides with the nabla-parallel spinors"
    checks = [Check("omega3 spectrum", lambda g, tol: _spec(act(cz.g2_form()), tol), anchor, "multiset", True)]
    expected = {"omega3 spectrum": _repeat((-7, 1), (1, 7))}
    for a in samples:
        a = _s(a)
        tag = f"[a={format_scalar(a)}]"
        rec_a = nearly_parallel_record(a)

        def r(g, _rec=rec_a):
            return _rec

        checks += [
            Check(f"T {tag}", lambda g, tol, r=r: r(g).torsion, anchor),
            Check(f"||T||^2 {tag}", lambda g, tol, r=r: r(g).torsion_norm2(), anchor),
            Check(f"Scal^g {tag}", lambda g, tol, r=r: r(g).resolved_scal_g(), anchor),
            Check(f"T on psi0 {tag}", lambda g, tol, r=r: _psi0_torsion_eigenvalue(r(g), tol), anchor),
            Check(f"Omega shift {tag}", lambda g, tol, r=r: -cz.kp_constant(r(g)), "Omega = (D^{1/3})^2 - 49a^2/144"),
            Check(f"psi0 line annihilated {tag}",
                  lambda g, tol, r=r: cz.parallel_spinor_annihilation(r(g), _psi0_torsion_eigenvalue(r(g), tol)), kernel),
            Check(f"window on 7a/6 branch {tag}",
                  lambda g, tol, a=a: [str(i) for i in cz.g2_kernel_window(a, a * 7 / 6)], kernel),
            Check(f"window on -a/6 branch {tag}",
                  lambda g, tol, a=a: [str(i) for i in cz.g2_kernel_window(a, -a / 6)], kernel),
            Check(f"Friedrich-type bound {tag}",
                  lambda g, tol, r=r: cz.friedrich_bound(7, r(g).resolved_scal_g(), torsion_spectrum(r(g), tol)).holds,
                  "scalar curvature bound for parallel spinors"),
        ]
        expected.update({
            f"T {tag}": cz.g2_form() * (-a / 6),
            f"||T||^2 {tag}": a * a * 7 / 36,
            f"Scal^g {tag}": a * a * 21 / 8,
            f"T on psi0 {tag}": a * 7 / 6,
            f"Omega shift {tag}": -(a * a * 49 / 144),
            f"psi0 line annihilated {tag}": True,
            f"window on 7a/6 branch {tag}": [f"{{{format_scalar(-a * 7 / 8)}}}"],
            f"window on -a/6 branch {tag}": [],
            f"Friedrich-type bound {tag}": False,
        })
    rec = nearly_parallel_record(samples[0])
    rec = GeometryRecord("g2-nearly-parallel", 7, rec.torsion, dtorsion=rec.dtorsion, scal_g=rec.scal_g,
                         parallel_torsion=True, data={"a": [format_scalar(_s(a)) for a in samples]})
    return CatalogEntry(rec, tuple(checks), expected, "7-dim nearly parallel G2, a in {1, 2}")


# Heisenberg x R, type W3: constant-coefficient endomorphisms only

HEISENBERG_R_DIAG_3DT = (8, 0, 8, -16, 8, -16, 8, 0)
HEISENBERG_R_DIAG_DT = (0, 8, 0, -8, 0, -8, 0, 8)


def _data_diag(g: GeometryRecord, key: str) -> list:
    return [_s(x) for x in g.data["endomorphisms"][key]]


def _data_derived(g: GeometryRecord) -> dict:
    """Split the stored diagonals into dT, 2 sigma_T and T^2."""
    a = _data_diag(g, "3dT-2sigma")
    b = _data_diag(g, "dT-2sigma")
    n2 = _s(g.data["torsion_norm2"])
    dt = [(x - y) / 2 for x, y in zip(a, b)]
    two_sigma = [d - y for d, y in zip(dt, b)]
    t2 = [n2 - s for s in two_sigma]
    return {"dT": dt, "2sigma": two_sigma, "T^2": t2, "norm2": n2}


def _data_casimir_zero(g: GeometryRecord) -> list:
    d = _data_derived(g)
    scal = g.resolved_scal_g() - d["norm2"] * Scalar(3) / 2
    return [(x + scal) / 8 for x in _data_diag(g, "3dT-2sigma")]


def g2_w3_heisenberg_entry() -> CatalogEntry:
    data = {
        "endomorphisms": {
            "3dT-2sigma": [str(x) for x in HEISENBERG_R_DIAG_3DT],
            "dT-2sigma": [str(x) for x in HEISENBERG_R_DIAG_DT],
        },
        "torsion_norm2": "4",
    }
    # type W3: (T, omega3) = 0, so Scal^g = -(1/2) ||T||^2
    rec = GeometryRecord("g2-w3-heisenberg", 7, None, scal_g=Scalar(-2), data=data)
    anchor = "W3 G2-structure on R x Heisenberg group"
    checks = [
        Check("3dT - 2sigma_T", lambda g, tol: _data_diag(g, "3dT-2sigma"), anchor, "multiset"),
        Check("dT - 2sigma_T", lambda g, tol: _data_diag(g, "dT-2sigma"), anchor, "multiset"),
        Check("dT", lambda g, tol: _data_derived(g)["dT"], anchor, "multiset"),
        Check("T^2 non-negative", lambda g, tol: all(x.sign() >= 0 for x in _data_derived(g)["T^2"]), anchor),
        Check("tr T^2 = 8 ||T||^2", lambda g, tol: sum(_data_derived(g)["T^2"], Scalar(0)) == 8 * _data_derived(g)["norm2"], anchor),
        Check("tr dT = 0", lambda g, tol: sum(_data_derived(g)["dT"], Scalar(0)).is_zero(), anchor),
        Check("Omega dominated by Delta_T",
              lambda g, tol: all((x - 2 * _data_derived(g)["norm2"]).sign() <= 0 for x in _data_diag(g, "3dT-2sigma")),
              "3dT - 2sigma_T - 2||T||^2 is non-positive"),
        Check("casimir_zero_spectrum", lambda g, tol: casimir_zero_spectrum(g, tol), anchor, "multiset"),
        Check("torsion form", lambda g, tol: torsion_spectrum(g, tol), anchor + "; structure constants not stored"),
    ]
    expected = {
        "3dT - 2sigma_T": _repeat((8, 4), (0, 2), (-16, 2)),
        "dT - 2sigma_T": _repeat((0, 4), (8, 2), (-8, 2)),
        "dT": _repeat((4, 4), (-4, 4)),
        "T^2 non-negative": True,
        "tr T^2 = 8 ||T||^2": True,
        "tr dT = 0": True,
        "Omega dominated by Delta_T": True,
        "casimir_zero_spectrum": _repeat((0, 4), (-1, 2), (-3, 2)),
        "torsion form": None,
    }
    return CatalogEntry(rec, tuple(checks), expected, "7-dim W3 G2-structure on R x H (data only)")


# Aloff-Wallach space N(1,1), W3 family in 0 < y < 1


def _y(y) -> Scalar:
    y = _s(y)
    if not y.is_rational() or not (Scalar(0) < y < Scalar(1)):
        raise ValueError("y must be a rational number in (0, 1)")
    return y


def aw_torsion(y) -> Form:
    """T5; the torsion form itself is 4 T5."""
    y = _y(y)
    a = -(y + 2) / 4
    b = 3 * y / (y - 1)
    c = (2 + 2 * y - y * y) / (2 * y - 2)
    return Form(7, {(1, 3, 5): a, (1, 4, 6): a, (2, 4, 5): a, (2, 3, 6): -a,
                    (1, 2, 7): b, (3, 4, 7): c, (5, 6, 7): -c})


def aw_dtorsion(y, printed: bool = False) -> Form:
    """d T5.  The X3456 coefficient is 3y(y^3 - 5y - 2)/(y - 1)^2.

    ``printed=True`` uses 3y(y^3 - 2y - 2)/(y - 1)^2 instead, which is the
    value that does not reproduce the expected spectra.
    """
    y = _y(y)
    p = 2 + 4 * y
    inner_q = (-2 - 2 * y + y ** 3) if printed else (-2 - 5 * y + y ** 3)
    q = 3 * y * inner_q / (y - 1) ** 2
    r = (10 + 9 * y + 12 * y ** 2 + 5 * y ** 3) / (y - 1) ** 2
    return Form(7, {(2, 3, 5, 7): p, (2, 4, 6, 7): p, (1, 4, 5, 7): -p, (1, 3, 6, 7): p,
                    (3, 4, 5, 6): q, (1, 2, 3, 4): r, (1, 2, 5, 6): -r})


def aw_closed_forms(y) -> dict:
    """a, b, c and a*, b*, c* as closed-form rational functions of y."""
    y = _y(y)
    return {
        "a": -72 * (2 + y + y ** 2 - y ** 3 + y ** 4) / (y - 1) ** 2,
        "b": 16 * (20 + 7 * y + 33 * y ** 2 + 13 * y ** 3 - y ** 4) / (y - 1) ** 2,
        "c": 64 * (7 + 10 * y + y ** 2),
        "a*": 24 * (y - 2) * (1 + y) ** 2 / (1 - y),
        "b*": 16 * (4 - 7 * y - 10 * y ** 2 + y ** 3) / (y - 1),
        "c*": 64 * (5 + 6 * y + y ** 2),
    }


def aw_endomorphisms(y, printed: bool = False) -> tuple[ExactMatrix, ExactMatrix]:
    """3(4dT5) + (4T5)^2 - 3||4T5||^2 and 4dT5 + (4T5)^2 - ||4T5||^2."""
    t = aw_torsion(y) * 4
    d = act(aw_dtorsion(y, printed) * 4)
    tt = act(t)
    sq = tt @ tt
    n = norm2(t)
    return d.scale(Scalar(3)) + sq - n * 3, d + sq - n


def aw_record(y) -> GeometryRecord:
    y = _y(y)
    return GeometryRecord(f"g2-w3-aloff-wallach(y={format_scalar(y)})", 7, aw_torsion(y) * 4,
                          dtorsion=aw_dtorsion(y) * 4, data={"y": format_scalar(y)})


def g2_w3_aloff_wallach_entry(samples=DEFAULT_Y_SAMPLES) -> CatalogEntry:
    samples = [_y(y) for y in samples]
    if not samples:
        raise ValueError("at least one y sample is required")
    anchor = "W3 G2-structures on N(1,1) = SU(3)/S^1, 0 < y < 1"
    checks, expected = [], {}
    for y in samples:
        tag = f"[y={format_scalar(y)}]"
        cf = aw_closed_forms(y)
        checks += [
            Check(f"3(4dT5) + (4T5)^2 - 3||4T5||^2 {tag}",
                  lambda g, tol, y=y: _spec(aw_endomorphisms(y)[0], tol),
                  "eigenvalues a (x4), -b (x2), 0, c", "multiset", True),
            Check(f"4dT5 + (4T5)^2 - ||4T5||^2 {tag}",
                  lambda g, tol, y=y: _spec(aw_endomorphisms(y)[1], tol),
                  "eigenvalues a* (x4), b* (x2), 0, c*", "multiset", True),
            Check(f"4dT5 - 2 sigma(4T5) identity {tag}",
                  lambda g, tol, y=y: aw_endomorphisms(y)[1] == act(aw_dtorsion(y) * 4 - sigma_T(aw_torsion(y) * 4) * 2),
                  "Clifford identity T^2 = ||T||^2 - 2 sigma_T"),
            Check(f"sign pattern {tag}",
                  lambda g, tol, y=y: (lambda c: (c["a"].sign(), c["a*"].sign(), c["c"].sign(), c["c*"].sign()))(aw_closed_forms(y)),
                  anchor),
        ]
        expected.update({
            f"3(4dT5) + (4T5)^2 - 3||4T5||^2 {tag}": [cf["a"]] * 4 + [-cf["b"]] * 2 + [Scalar(0), cf["c"]],
            f"4dT5 + (4T5)^2 - ||4T5||^2 {tag}": [cf["a*"]] * 4 + [cf["b*"]] * 2 + [Scalar(0), cf["c*"]],
            f"4dT5 - 2 sigma(4T5) identity {tag}": True,
            f"sign pattern {tag}": (-1, -1, 1, 1),
        })
    base = aw_record(samples[0])
    rec = GeometryRecord("g2-w3-aloff-wallach", 7, base.torsion, dtorsion=base.dtorsion,
                         data={"y": [format_scalar(y) for y in samples]})
    return CatalogEntry(rec, tuple(checks), expected, "7-dim W3 G2-structures on N(1,1), y-family")


# N(1,1), cocalibrated with special symmetry

def n11_torsion() -> Form:
    """4T with T = (sqrt3/6)(X135 + X146 - X245 + X236)."""
    c = Scalar(0, 4) / 6
    return Form(7, {(1, 3, 5): c, (1, 4, 6): c, (2, 4, 5): -c, (2, 3, 6): c})


def n11_dtorsion() -> Form:
    return Form(7, {(2, 3, 5, 7): -4, (2, 4, 6, 7): -4, (1, 4, 5, 7): -4, (1, 3, 6, 7): 4})


def _zero_line_torsion(g, tol) -> Scalar:
    z = cz.zero_order_general(g)
    for lam, p in split_by(z):
        if lam.is_zero():
            if p.trace() != ComplexScalar(1):
                raise ValueError("kernel of Z is not a line")
            tp = act(g.torsion) @ p
            c = tp.trace().re
            if tp != p.scale(c):
                raise ValueError("torsion is not scalar on the kernel of Z")
            return c
    raise ValueError("Z has no kernel")


def g2_n11_entry() -> CatalogEntry:
    # (4T, omega3)^2 = 64/3 for the structure's own 3-form, so
    # Scal^g = 2 (4T, omega3)^2 - ||4T||^2 / 2 = 40
    rec = GeometryRecord("g2-n11-cocalibrated", 7, n11_torsion(), dtorsion=n11_dtorsion(),
                         deltatorsion=Form.zero(7), scal_g=Scalar(40))
    anchor = "cocalibrated G2-structure on N(1,1) with special symmetry"
    checks = [
        _generic("torsion_norm2", anchor),
        _generic("scal_g", anchor),
        _generic("casimir_zero_spectrum", "endomorphism diag(10/3, 10/3, 0, 12, 10/3, 10/3, 10/3, 10/3)"),
        Check("closed-form endomorphism = Z",
              lambda g, tol: act(g.resolved_dtorsion() * 3 - sigma_T(g.torsion) * 2).scale(Scalar(1) / 8)
              + (Scalar(64) / 3 / 4 - g.torsion_norm2() / 4) == cz.zero_order_general(g), anchor),
        _generic("torsion_spectrum", anchor),
        Check("torsion on kernel line", _zero_line_torsion, "kernel of Omega equals the nabla-parallel spinors"),
        Check("Z non-negative", lambda g, tol: min(casimir_zero_spectrum(g, tol)).sign() >= 0,
              "Casimir operator is non-negative"),
    ]
    r = Scalar(0, 8) / 3
    expected = {
        "torsion_norm2": Scalar(16) / 3,
        "scal_g": Scalar(40),
        "casimir_zero_spectrum": _repeat((Scalar(10) / 3, 6), (0, 1), (12, 1)),
        "closed-form endomorphism = Z": True,
        "torsion_spectrum": [-r, r] + [Scalar(0)] * 6,
        "torsion on kernel line": -r,
        "Z non-negative": True,
    }
    return CatalogEntry(rec, tuple(checks), expected, "7-dim cocalibrated G2 on N(1,1)")


# ---------------------------------------------------------------------------
# catalog and JSON
# ---------------------------------------------------------------------------


def load_catalog(y_samples=None) -> list[CatalogEntry]:
    ys = tuple(y_samples) if y_samples else DEFAULT_Y_SAMPLES
    entries = [
        heisenberg_entry(),
        stiefel_entry(),
        sasakian_eta_einstein_entry(),
        sasakian_einstein_entry(),
        sasakian_scal28_entry(),
        nearly_kaehler_entry(),
        g2_nearly_parallel_entry(),
        g2_w3_heisenberg_entry(),
        g2_w3_aloff_wallach_entry(ys),
        g2_n11_entry(),
    ]
    return sorted(entries, key=lambda e: e.name)


def get_entry(name: str, y_samples=None) -> CatalogEntry:
    for e in load_catalog(y_samples):
        if e.name == name:
            return e
    raise KeyError(name)


def _parse_expected(name: str, value):
    kind = GENERIC[name][0]
    if kind == "multiset":
        return [parse_scalar(str(v)) for v in value]
    if name in ("dtorsion", "deltatorsion"):
        raise ValueError("form-valued expectations are not supported in geometry files")
    if isinstance(value, bool):
        return value
    return parse_scalar(str(value))


def entry_from_json(doc: dict) -> CatalogEntry:
    """Build an entry from a geometry document (see README for the schema)."""
    try:
        name = str(doc["name"])
        dim = int(doc["dim"])
        torsion = form_from_json(dim, doc["torsion"])
        lie = MetricReductiveAlgebra.from_json(doc["lie"]) if doc.get("lie") else None
        dt_raw = doc.get("dtorsion", "lie")
        dtorsion = None if dt_raw == "lie" else form_from_json(dim, dt_raw)
        delta_raw = doc.get("deltatorsion", [])
        deltatorsion = None if delta_raw == "lie" else form_from_json(dim, delta_raw)
        s_raw = doc.get("scal_g", "lie")
        scal_g = None if s_raw == "lie" else parse_scalar(str(s_raw))
        flags = doc.get("flags", {})
        rec = GeometryRecord(
            name, dim, torsion, dtorsion=dtorsion, deltatorsion=deltatorsion, lie=lie, scal_g=scal_g,
            parallel_torsion=bool(flags.get("parallel_torsion", False)),
            naturally_reductive=bool(flags.get("naturally_reductive", False)),
        )
        if lie is not None and lie.dim_m != dim:
            raise ValueError("Lie data and dimension disagree")
        expected_raw = doc.get("expected", {})
        unknown = set(expected_raw) - set(GENERIC)
        if unknown:
            raise ValueError(f"unknown assertions: {sorted(unknown)}")
        checks = [_generic(k, f"user geometry {name}") for k in sorted(expected_raw)]
        expected = {k: _parse_expected(k, v) for k, v in expected_raw.items()}
        if rec.naturally_reductive and lie is not None:
            extra = _naturally_reductive_checks(f"user geometry {name}")
            checks += extra
            expected.update({c.name: True for c in extra})
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed geometry document: {exc}") from exc
    return CatalogEntry(rec, tuple(checks), expected, doc.get("description", ""))


def entry_to_json(rec: GeometryRecord) -> dict:
    """Geometry document for a record (expected block left empty)."""
    out = {"name": rec.name, "dim": rec.dim, "torsion": form_to_json(rec.require_torsion())}
    out["dtorsion"] = form_to_json(rec.dtorsion) if rec.dtorsion is not None else "lie"
    out["deltatorsion"] = form_to_json(rec.deltatorsion) if rec.deltatorsion is not None else "lie"
    out["scal_g"] = format_scalar(rec.scal_g) if rec.scal_g is not None else "lie"
    if rec.lie is not None:
        out["lie"] = rec.lie.to_json()
    out["flags"] = {"parallel_torsion": rec.parallel_torsion, "naturally_reductive": rec.naturally_reductive}
    out["expected"] = {}
    return out


def load_geometry_file(path) -> CatalogEntry:
    with open(path, encoding="utf-8") as fh:
        return entry_from_json(json.load(fh))
