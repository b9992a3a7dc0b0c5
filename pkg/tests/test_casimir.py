import pytest

from skewtorsion import casimir as cz
from skewtorsion.casimir import GeometryRecord, InsufficientData
from skewtorsion.exterior import Form, hodge_star, inner, norm2, sigma_T
from skewtorsion.homogeneous import heisenberg_algebra, stiefel_algebra
from skewtorsion.scalar import Scalar
from skewtorsion.spinrep import act, exact_spectrum, identity

T = cz.sasakian_torsion()


@pytest.mark.parametrize("s", [-4, 20, 28, Scalar(7, 2)])
def test_sasakian_constants(s):
    s = Scalar(s) if not isinstance(s, Scalar) else s
    c = cz.sasakian_constants(s)
    assert c == {0: s / 8 + Scalar(1) / 2, 4: s / 8 - Scalar(7) / 2, -4: s / 8 - Scalar(7) / 2}


def test_flat_torsion_free_limit():
    g = GeometryRecord("lc", 4, Form.zero(4), dtorsion=Form.zero(4), scal_g=Scalar(12), parallel_torsion=True)
    assert cz.zero_order_general(g) == identity(4).scale(Scalar(12) / 8)


def test_parallel_form_agrees_on_heisenberg():
    g = GeometryRecord("h", 5, T, lie=heisenberg_algebra(), parallel_torsion=True, naturally_reductive=True)
    assert cz.zero_order_general(g) == cz.zero_order_parallel(g)
    assert cz.kp_constant(g) == Scalar(0)
    first, second = cz.nonnegativity_conditions(g)
    assert first.holds and first.left == first.right


def test_stiefel_kp():
    g = GeometryRecord("s", 5, T, lie=stiefel_algebra(), parallel_torsion=True)
    assert cz.kp_constant(g) == Scalar(3)
    assert cz.dT_equals_2sigma(g)


def test_missing_data():
    g = GeometryRecord("x", 5, T)
    with pytest.raises(InsufficientData):
        cz.zero_order_general(g)
    with pytest.raises(InsufficientData):
        cz.kp_constant(g)
    with pytest.raises(ValueError):
        GeometryRecord("y", 5, T, naturally_reductive=True)


@pytest.mark.parametrize("a", [1, 2, Scalar(1) / 3])
def test_nearly_parallel(a):
    a = Scalar(a) if not isinstance(a, Scalar) else a
    w = cz.g2_form()
    t, scal = cz.g2_characteristic_torsion(w, hodge_star(w) * (-a))
    assert t == w * (-a / 6)
    assert scal == a * a * 21 / 8
    g = GeometryRecord("np", 7, t, dtorsion=sigma_T(t) * 2, scal_g=scal, parallel_torsion=True)
    assert cz.kp_constant(g) == a * a * 49 / 144
    assert cz.parallel_spinor_annihilation(g, a * 7 / 6)
    assert not cz.parallel_spinor_annihilation(g, -a / 6)
    assert [str(i) for i in cz.g2_kernel_window(a, a * 7 / 6)] == [f"{{{-a * 7 / 8}}}"]
    assert cz.g2_kernel_window(a, -a / 6) == []
    bound = cz.friedrich_bound(7, scal, exact_spectrum(act(t)))
    assert not bound.holds


def test_general_and_g2_formulas_agree_for_w3():
    # Omega - Delta_T = (1/4)(T, w)^2 + (1/8)(3dT - 2 sigma - 2||T||^2) in the G2 case
    t = Form(7, {(1, 2, 3): 1, (4, 5, 6): -1})
    d = Form(7, {(1, 2, 4, 7): 2})
    w = cz.g2_form()
    tw = inner(t, w)
    scal_g = tw * tw * 2 - norm2(t) / 2
    g = GeometryRecord("w", 7, t, dtorsion=d, scal_g=scal_g)
    lhs = cz.zero_order_general(g)
    rhs = act(d * 3 - sigma_T(t) * 2).scale(Scalar(1) / 8) + (tw * tw / 4 - norm2(t) / 4)
    assert lhs == rhs


def test_three_dimensional_example():
    assert cz.three_dim_casimir(1, 6) == (Scalar(1), Scalar(1), Scalar(-3) / 4)
    assert act(Form(3, {(1, 2, 3): 1})) == identity(3)


def test_killing_spinor_value():
    assert cz.killing_casimir_eigenvalue(Scalar(-5) / 2, 4, 3) == Scalar(-3) / 4


@pytest.mark.parametrize("mu,feasible,text", [
    (5, False, "infeasible; gap = 17/4 - sqrt(5) ≈ 2.0139"),
    (9, False, "infeasible; gap = 21/4 ≈ 5.2500"),
    (0, True, "feasible; gap = -1 ≈ -1.0000"),
])
def test_gap(mu, feasible, text):
    r = cz.einstein_sasakian_gap(mu)
    assert r.feasible is feasible
    assert str(r) == text


def test_gap_value_precision():
    assert abs(cz.einstein_sasakian_gap(5).gap - (17 / 4 - 5 ** 0.5)) < 1e-12


def test_gap_rejects_negative():
    with pytest.raises(ValueError):
        cz.einstein_sasakian_gap(-1)


def test_window_check():
    assert cz.sasakian_window_check(1)
    assert not cz.sasakian_window_check(5)
    assert cz.sasakian_window_check(Scalar(9) / 4)


def test_friedrich_bound_example():
    rep = cz.friedrich_bound(5, Scalar(1), [Scalar(4), Scalar(0), Scalar(-4)])
    assert rep.left == Scalar(16) and rep.right == Scalar(5) and rep.holds
    assert not cz.friedrich_bound(5, Scalar(4), [Scalar(4)]).holds
    with pytest.raises(ValueError):
        cz.friedrich_bound(1, 0, [])


def test_nonnegativity_nearly_kaehler():
    from skewtorsion.catalog import get_entry

    first, second = cz.nonnegativity_conditions(get_entry("nearly-kaehler-a2").record)
    assert first.left == Scalar(60) and not first.holds
    assert second.holds


def test_g2_parallel_structure_has_no_torsion():
    w = cz.g2_form()
    t, scal = cz.g2_characteristic_torsion(w, Form.zero(7))
    assert t == Form(7, {}) and scal == Scalar(0)


def test_heisenberg_parallel_spinors():
    g = GeometryRecord("h", 5, T, lie=heisenberg_algebra(), parallel_torsion=True, naturally_reductive=True)
    assert cz.parallel_spinor_annihilation(g, 0)
    with pytest.raises(ValueError):
        cz.parallel_spinor_annihilation(g, 1)
