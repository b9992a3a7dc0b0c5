import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewtorsion.homogeneous import heisenberg_group_algebra
from skewtorsion.linalg import ExactMatrix
from skewtorsion.scalar import ComplexScalar, Scalar
from skewtorsion.uea import (
    DegreeOverflow, LieRelations, OperatorPolynomial, RelationError, STIEFEL_H, build_stiefel_dirac,
    evaluate_in_representation, format_operator, multiply, normal_order, reduce_to_casimir,
    so4_defining_representation, stiefel_casimir, stiefel_relations, stiefel_s_matrix, stiefel_square,
)
from strategies import small_fractions

I = ComplexScalar(0, 1)


def heisenberg_relations():
    return LieRelations.from_algebra(heisenberg_group_algebra())


def heisenberg_rep():
    def e(i, j, c=1):
        rows = [[0] * 4 for _ in range(4)]
        rows[i - 1][j - 1] = c
        return ExactMatrix(rows)

    return [e(1, 2), e(2, 4, -2), e(1, 3), e(3, 4, -2), e(1, 4)]


SETTINGS = {
    "stiefel": (stiefel_relations, so4_defining_representation),
    "heisenberg": (heisenberg_relations, heisenberg_rep),
}


def test_relations_satisfy_jacobi():
    assert stiefel_relations().check_jacobi()
    assert heisenberg_relations().check_jacobi()


def test_representations_respect_relations():
    for rel, rep in SETTINGS.values():
        rel().check_representation(rep())


def test_wrong_representation_rejected():
    rel = stiefel_relations()
    rep = so4_defining_representation()
    rep[0], rep[1] = rep[1], rep[0]
    with pytest.raises(RelationError):
        rel.check_representation(rep)


def test_broken_jacobi_detected():
    rel = LieRelations("abc", {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {0: 1}})
    assert not rel.check_jacobi()


coeff = st.builds(lambda a, b: ComplexScalar(Scalar(a), Scalar(b)), small_fractions, small_fractions)


@st.composite
def matrices(draw, size=2):
    return ExactMatrix([[draw(coeff) for _ in range(size)] for _ in range(size)])


@st.composite
def linear_polys(draw, count):
    words = draw(st.lists(st.sampled_from([()] + [(g,) for g in range(count)]), min_size=1, max_size=3, unique=True))
    return OperatorPolynomial(2, {w: draw(matrices()) for w in words})


@st.composite
def setting_and_polys(draw):
    name = draw(st.sampled_from(sorted(SETTINGS)))
    rel = SETTINGS[name][0]()
    return name, draw(linear_polys(rel.count)), draw(linear_polys(rel.count))


@settings(max_examples=60, deadline=None)
@given(setting_and_polys())
def test_representation_oracle(case):
    """Evaluating a product equals multiplying the evaluated operators."""
    name, p, q = case
    rel_fn, rep_fn = SETTINGS[name]
    rel, rep = rel_fn(), rep_fn()
    lhs = evaluate_in_representation(multiply(p, q, rel), rep, rel)
    rhs = evaluate_in_representation(p, rep, rel) @ evaluate_in_representation(q, rep, rel)
    assert lhs == rhs


@st.composite
def word_sums(draw):
    name = draw(st.sampled_from(sorted(SETTINGS)))
    count = SETTINGS[name][0]().count
    words = draw(st.lists(st.lists(st.integers(0, count - 1), max_size=4).map(tuple), min_size=1, max_size=4,
                          unique=True))
    terms = {w: ExactMatrix([[draw(coeff)]]) for w in words}
    return name, terms, draw(st.integers(0, 2 ** 32 - 1))


@settings(max_examples=60, deadline=None)
@given(word_sums())
def test_pbw_confluence(case):
    """Any rewrite schedule reaches the same normal form, and it is ordered."""
    name, terms, seed = case
    rel = SETTINGS[name][0]()
    a = normal_order(terms, rel, 1)
    b = normal_order(terms, rel, 1, random.Random(seed))
    c = normal_order(terms, rel, 1, random.Random(seed + 1))
    assert a == b == c
    assert all(list(w) == sorted(w) for w in a.terms)


@settings(max_examples=50, deadline=None)
@given(word_sums())
def test_normal_form_evaluates_like_words(case):
    name, terms, _ = case
    rel_fn, rep_fn = SETTINGS[name]
    rel, rep = rel_fn(), rep_fn()
    size = rep[0].size
    direct = ExactMatrix.zeros(size)
    for w, c in terms.items():
        m = ExactMatrix.identity(size)
        for g in w:
            m = m @ rep[g]
        direct = direct + m.scale(c[0, 0])
    assert evaluate_in_representation(normal_order(terms, rel, 1), rep, rel) == direct


def test_degree_cap():
    rel = stiefel_relations()
    p = OperatorPolynomial(1, {(0, 1): ExactMatrix([[1]])})
    q = OperatorPolynomial(1, {(2,): ExactMatrix([[1]])})
    with pytest.raises(DegreeOverflow):
        multiply(p, q, rel)


def test_unordered_words_rejected():
    with pytest.raises(ValueError):
        OperatorPolynomial(1, {(2, 1): ExactMatrix([[1]])})


def test_stiefel_square_coefficients():
    sq = stiefel_square()
    z, q = ComplexScalar(0), ComplexScalar(Scalar(9) / 4)
    assert sq.coefficient(()) == ExactMatrix.diag([z, z, q, q])
    assert sq.coefficient((STIEFEL_H,)) == ExactMatrix.diag([6 * I, -6 * I, z, z])
    r = ComplexScalar(Scalar(0, 1))
    assert sq.coefficient((4,)) == ExactMatrix([[z, z, z, z], [z, z, z, z], [z, z, z, -r], [z, z, r, z]])
    for k in range(5):
        assert sq.coefficient((k, k)) == ExactMatrix.identity(4).scale(Scalar(-3))
    assert sq.degree() == 2
    assert not any(len(w) == 2 and w[0] != w[1] for w in sq.terms)


def test_stiefel_s_is_torsion_multiple():
    sd = build_stiefel_dirac()
    assert sd.torsion.scale(Scalar(-5) / 8) == stiefel_s_matrix()
    assert list(sd.isotropy) == [-I, I, ComplexScalar(0), ComplexScalar(0)]


def test_stiefel_casimir_operators():
    ops = {format_operator(op): op.multiplicity for op in stiefel_casimir()}
    assert ops == {
        "-3*sum(X^2) + 3": 2,
        "-3*sum(X^2) - 3/4 + s3*i*X5": 1,
        "-3*sum(X^2) - 3/4 - s3*i*X5": 1,
    }


def test_reduce_rejects_noncommuting_coefficients():
    a = ExactMatrix([[1, 0], [0, -1]])
    b = ExactMatrix([[0, 1], [1, 0]])
    p = OperatorPolynomial(2, {(): a, (0,): b})
    with pytest.raises(ValueError):
        reduce_to_casimir(p, {}, 5, ["X1", "X2", "X3", "X4", "X5", "H"])


def test_stiefel_square_evaluates_like_dirac_squared():
    sd = build_stiefel_dirac()
    rep = so4_defining_representation()
    d = evaluate_in_representation(sd.dirac, rep, sd.relations)
    assert evaluate_in_representation(stiefel_square(sd), rep, sd.relations) == d @ d


def test_single_rewrite():
    rel = stiefel_relations()
    one = ExactMatrix([[1]])
    x1 = OperatorPolynomial(1, {(1,): one})
    x0 = OperatorPolynomial(1, {(0,): one})
    prod = multiply(x1, x0, rel)
    # X2 X1 = X1 X2 + [X2, X1]
    bracket = {(): one.scale(0)}
    for k, c in rel.bracket(1, 0).items():
        bracket[(k,)] = one.scale(c)
    assert prod == OperatorPolynomial(1, {(0, 1): one}) + OperatorPolynomial(1, bracket)


def test_reduce_zero_polynomial():
    assert reduce_to_casimir(OperatorPolynomial(2, {}), {}, 5, ["X1", "X2", "X3", "X4", "X5", "H"]) == []
