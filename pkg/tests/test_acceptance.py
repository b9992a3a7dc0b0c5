"""Acceptance criteria 1-10.  Each test prints one PASS/FAIL line."""

import random
import subprocess
import sys
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import pytest

from skewtorsion import casimir as cz
from skewtorsion import catalog as cat
from skewtorsion.clifford import clifford_mul, contraction_square, contraction_square_identity, torsion_square_identity
from skewtorsion.exterior import Form, basis_blades, hodge_star, norm2, sigma_T
from skewtorsion.homogeneous import heisenberg_algebra, heisenberg_group_algebra, invariant_d, nomizu_curvature, stiefel_algebra
from skewtorsion.linalg import ExactMatrix
from skewtorsion.scalar import ComplexScalar, Scalar
from skewtorsion.spinrep import act, exact_spectrum, identity, spectrum, split_by
from skewtorsion.uea import STIEFEL_H, stiefel_casimir, stiefel_square

ROOT = Path(__file__).resolve().parents[1]
SASAKIAN_T = Form(5, {(1, 2, 5): 2, (3, 4, 5): 2})


@contextmanager
def criterion(capsys, n, title):
    ok = False
    try:
        yield
        ok = True
    finally:
        with capsys.disabled():
            print(f"\n[acceptance] criterion {n}: {'PASS' if ok else 'FAIL'} - {title}")


def _repeat(*pairs):
    return sorted((Scalar(v) if not isinstance(v, Scalar) else v for v, k in pairs for _ in range(k)), key=float)


def _random_three_form(rng):
    n = rng.randint(3, 8)
    blades = list(basis_blades(n, 3))
    chosen = rng.sample(blades, rng.randint(1, min(6, len(blades))))
    return Form(n, {b: Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 6)) for b in chosen})


def test_criterion_01_clifford_identities(capsys):
    with criterion(capsys, 1, "T^2 and sum (e_k -| T)^2 identities on 120 random 3-forms, exact"):
        rng = random.Random(20261018)
        dims = set()
        for _ in range(120):
            t = _random_three_form(rng)
            dims.add(t.dim)
            assert clifford_mul(t, t) == torsion_square_identity(t)
            assert contraction_square(t) == contraction_square_identity(t)
        assert dims == set(range(3, 9))


def test_criterion_02_sasakian(capsys):
    with criterion(capsys, 2, "Sasakian T^2, spectrum, e1234 signs, zero-order constants"):
        t = act(SASAKIAN_T)
        e1234 = act(Form(5, {(1, 2, 3, 4): 1}))
        assert t @ t == identity(5).scale(Scalar(8)) - e1234.scale(Scalar(8))
        floats = sorted(spectrum(t))
        assert all(abs(a - b) <= 1e-9 for a, b in zip(floats, [-4, 0, 0, 4]))
        assert exact_spectrum(t) == _repeat((-4, 1), (0, 2), (4, 1))
        for lam, p in split_by(t):
            assert e1234 @ p == p.scale(Scalar(1 if lam.is_zero() else -1))
        for s in (-4, 20, 28):
            s = Scalar(s)
            assert cz.sasakian_constants(s) == {0: s / 8 + Scalar(1) / 2, 4: s / 8 - Scalar(7) / 2,
                                                -4: s / 8 - Scalar(7) / 2}


def test_criterion_03_heisenberg(capsys):
    with criterion(capsys, 3, "Heisenberg Scal^g = -4, d eta = 2(e12 + e34), kp = 0"):
        L = heisenberg_algebra()
        assert nomizu_curvature(L).scal == Scalar(-4)
        assert nomizu_curvature(heisenberg_group_algebra()).scal == Scalar(-4)
        assert invariant_d(heisenberg_group_algebra(), Form(5, {(5,): 1})) == Form(5, {(1, 2): 2, (3, 4): 2})
        g = cat.get_entry("heisenberg5").record
        assert cz.kp_constant(g) == Scalar(0)
        # Omega_0 = Delta_T: Z vanishes on S_0
        assert cz.split_constants(cz.zero_order_general(g), act(g.torsion))[Scalar(0)] == Scalar(0)


def test_criterion_04_stiefel(capsys):
    with criterion(capsys, 4, "Stiefel Scal^g = 20, M1, M2, M3 and reduced Casimir operators"):
        assert nomizu_curvature(stiefel_algebra()).scal == Scalar(20)
        sq = stiefel_square()
        z, i = ComplexScalar(0), ComplexScalar(0, 1)
        q = ComplexScalar(Scalar(9) / 4)
        r = ComplexScalar(Scalar(0, 1))
        assert sq.coefficient(()) == ExactMatrix.diag([z, z, q, q])
        assert sq.coefficient((STIEFEL_H,)) == ExactMatrix.diag([i * 6, -(i * 6), z, z])
        assert sq.coefficient((4,)) == ExactMatrix([[z, z, z, z], [z, z, z, z], [z, z, z, -r], [z, z, r, z]])
        ops = sorted((op.multiplicity, str(op)) for op in stiefel_casimir())
        assert ops == [
            (1, "-3*sum(X^2) - 3/4 + s3*i*X5"),
            (1, "-3*sum(X^2) - 3/4 - s3*i*X5"),
            (2, "-3*sum(X^2) + 3"),
        ]


def test_criterion_05_nearly_kaehler(capsys):
    with criterion(capsys, 5, "nearly Kaehler a = 2: dT = 2 sigma_T, {0 x2, 32 x6}, shift -2a"):
        g = cat.get_entry("nearly-kaehler-a2").record
        assert g.dtorsion == sigma_T(g.torsion) * 2
        m = act(g.dtorsion).scale(Scalar(2)) + g.scal()
        assert exact_spectrum(m) == _repeat((0, 2), (32, 6))
        assert cz.zero_order_general(g) == cz.zero_order_parallel(g)
        assert -cz.kp_constant(g) == Scalar(-4)


@pytest.mark.parametrize("a", [1, 2])
def test_criterion_06_g2(capsys, a):
    with criterion(capsys, 6, f"G2 omega3 spectrum and nearly parallel pipeline at a = {a}"):
        a = Scalar(a)
        w = cz.g2_form()
        assert exact_spectrum(act(w)) == _repeat((-7, 1), (1, 7))
        t, scal = cz.g2_characteristic_torsion(w, hodge_star(w) * (-a))
        assert t == w * (-a / 6)
        assert norm2(t) == a * a * 7 / 36
        assert scal == a * a * 21 / 8
        g = cz.GeometryRecord("np", 7, t, dtorsion=sigma_T(t) * 2, scal_g=scal, parallel_torsion=True)
        [p0] = [p for lam, p in split_by(act(w)) if lam == Scalar(-7)]
        assert act(t) @ p0 == p0.scale(a * 7 / 6)
        assert -cz.kp_constant(g) == -(a * a * 49 / 144)
        assert [str(x) for x in cz.g2_kernel_window(a, a * 7 / 6)] == [f"{{{-a * 7 / 8}}}"]
        assert cz.g2_kernel_window(a, -a / 6) == []


def _criterion_7_common():
    h = cat.get_entry("g2-w3-heisenberg")
    assert sorted(cat._data_diag(h.record, "3dT-2sigma"), key=float) == _repeat((-16, 2), (0, 2), (8, 4))
    assert sorted(cat._data_diag(h.record, "dT-2sigma"), key=float) == _repeat((-8, 2), (0, 4), (8, 2))
    n11 = cat.get_entry("g2-n11-cocalibrated").record
    assert exact_spectrum(cz.zero_order_general(n11)) == _repeat((0, 1), (Scalar(10) / 3, 6), (12, 1))
    return n11


def _literal_w3_failures():
    """Sub-claims of the W3 criterion that fail when the closed forms are used verbatim."""
    failures = []
    n11 = _criterion_7_common()
    for y in cat.DEFAULT_Y_SAMPLES:
        cf = cat.aw_closed_forms(y)
        m1, m2 = cat.aw_endomorphisms(y, printed=True)
        for label, m, want in (
            ("a, b, c", m1, [cf["a"]] * 4 + [cf["b"]] * 2 + [Scalar(0), cf["c"]]),
            ("a*, b*, c*", m2, [cf["a*"]] * 4 + [cf["b*"]] * 2 + [Scalar(0), cf["c*"]]),
        ):
            try:
                ok = exact_spectrum(m) == sorted(want, key=float)
            except ValueError:
                ok = False
            if not ok:
                failures.append(f"{label} at y={y}")
    if cat._zero_line_torsion(n11, 1e-9) != Scalar(0):
        failures.append("N(1,1) kernel on the T = 0 line")
    return failures


@pytest.mark.xfail(strict=True, reason="literal W3 data: b(y) sign, dT5 X3456 coefficient, N(1,1) kernel line")
def test_criterion_07_w3_examples_literal(capsys):
    with criterion(capsys, 7, "W3 examples with the closed forms taken literally"):
        failures = _literal_w3_failures()
        assert not failures, failures


def test_criterion_07_w3_examples_corrected(capsys):
    with criterion(capsys, "7 (corrected)", "W3 examples with corrected dT5 coefficient, -b, and the N(1,1) kernel line"):
        n11 = _criterion_7_common()
        for y in cat.DEFAULT_Y_SAMPLES:
            cf = cat.aw_closed_forms(y)
            m1, m2 = cat.aw_endomorphisms(y)
            assert exact_spectrum(m1) == sorted([cf["a"]] * 4 + [-cf["b"]] * 2 + [Scalar(0), cf["c"]], key=float)
            assert exact_spectrum(m2) == sorted([cf["a*"]] * 4 + [cf["b*"]] * 2 + [Scalar(0), cf["c*"]], key=float)
        # the kernel of the zero-order term is the line where 4T acts by -(4T, omega3)
        assert cat._zero_line_torsion(n11, 1e-9) == -Scalar(0, 8) / 3


def test_criterion_08_einstein_sasakian(capsys):
    with criterion(capsys, 8, "kernel system infeasible at mu_min = 5, gap 17/4 - sqrt 5, feasible at 0"):
        r5 = cz.einstein_sasakian_gap(5)
        assert not r5.feasible
        assert r5.gap_text() == "17/4 - sqrt(5)"
        assert abs(r5.gap - (17 / 4 - 5 ** 0.5)) <= 1e-12
        r0 = cz.einstein_sasakian_gap(0)
        assert r0.feasible
        assert Scalar(0) <= r0.window.lo and r0.window.hi <= Scalar(3)


def test_criterion_09_property_suites_standalone(capsys):
    with criterion(capsys, 9, "PBW confluence, representation oracle, curvature symmetries, d^2 = 0"):
        cmd = [
            sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
            "tests/test_uea.py::test_pbw_confluence",
            "tests/test_uea.py::test_representation_oracle",
            "tests/test_homogeneous.py::test_curvature_symmetries",
            "tests/test_homogeneous.py::test_d_squared_on_invariant_forms",
            "tests/test_homogeneous.py::test_random_nilpotent_curvature",
            "tests/test_homogeneous.py::test_random_nilpotent_d_squared",
        ]
        proc = subprocess.run(cmd, cwd=ROOT, capture_output=True, text=True, check=False)
        assert proc.returncode == 0, proc.stdout[-2000:]


def test_criterion_10_verify_all_stable(capsys):
    with criterion(capsys, 10, "verify --all exits 0 with byte-stable JSON"):
        cmd = [sys.executable, "-m", "skewtorsion", "verify", "--all", "--json"]
        first = subprocess.run(cmd, capture_output=True, check=False)
        second = subprocess.run(cmd, capture_output=True, check=False)
        assert first.returncode == 0 and second.returncode == 0
        assert first.stdout == second.stdout
        assert first.stdout.count(b'"name"') >= 10
