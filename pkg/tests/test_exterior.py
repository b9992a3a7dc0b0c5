import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewtorsion.exterior import (
    Form, form_from_json, form_to_json, hodge_star, hook, inner, norm2, permutation_sign, sigma_T,
    volume_form, wedge,
)
from skewtorsion.scalar import Scalar
from strategies import forms, three_forms


def test_permutation_sign():
    assert permutation_sign((2, 1, 3)) == -1
    assert permutation_sign((3, 1, 2)) == 1
    assert permutation_sign((1, 1)) == 0


def test_wedge_reorders_with_sign():
    e1, e2 = Form.basis(3, 1), Form.basis(3, 2)
    assert wedge(e2, e1) == -wedge(e1, e2)
    assert wedge(e1, e1).is_zero()


def test_hook_on_blade():
    assert hook(2, Form(3, {(1, 2, 3): 1})) == Form(3, {(1, 3): -1})


def test_sasakian_sigma():
    t = Form(5, {(1, 2, 5): 2, (3, 4, 5): 2})
    assert sigma_T(t) == Form(5, {(1, 2, 3, 4): 4})
    assert norm2(t) == Scalar(8)


def test_dimension_limit():
    with pytest.raises(ValueError):
        Form(9, {(1,): 1})
    with pytest.raises(ValueError):
        Form(3, {(1, 4): 1})


@settings(max_examples=60)
@given(st.integers(3, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))).flatmap(
    lambda nk: forms(nk[0], nk[1])))
def test_double_star(a):
    n = a.dim
    k = next(iter(a.degrees()))
    assert hodge_star(hodge_star(a)) == a * ((-1) ** (k * (n - k)))


@settings(max_examples=60)
@given(st.integers(3, 7).flatmap(lambda n: st.tuples(forms(n, 2), forms(n, 2))))
def test_wedge_star_is_inner_product(pair):
    a, b = pair
    assert wedge(a, hodge_star(b)) == volume_form(a.dim) * inner(a, b)


@settings(max_examples=60)
@given(three_forms())
def test_sigma_via_wedge_of_contractions(t):
    total = Form.zero(t.dim)
    for k in range(1, t.dim + 1):
        c = hook(k, t)
        total = total + wedge(c, c)
    assert sigma_T(t) == total * Scalar(1, 0) / 2


@given(three_forms())
def test_json_roundtrip(t):
    assert form_from_json(t.dim, form_to_json(t)) == t


def test_json_rejects_duplicates():
    with pytest.raises(ValueError):
        form_from_json(3, [{"idx": [1, 2], "c": "1"}, {"idx": [1, 2], "c": "2"}])
