"""Hypothesis strategies for exact algebraic objects."""

from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from skewtorsion.exterior import Form
from skewtorsion.scalar import Scalar

small_fractions = st.fractions(min_value=-4, max_value=4, max_denominator=6)
scalars = st.builds(Scalar, small_fractions, st.sampled_from([0, 0, 0, Fraction(1, 2), -1]))
rationals = st.builds(Scalar, small_fractions.filter(bool))


@st.composite
def forms(draw, dim, degree, coeffs=rationals, max_terms=5):
    blades = list(combinations(range(1, dim + 1), degree))
    chosen = draw(st.lists(st.sampled_from(blades), min_size=1, max_size=min(max_terms, len(blades)), unique=True))
    return Form(dim, {b: draw(coeffs) for b in chosen})


@st.composite
def three_forms(draw, dims=range(3, 9), coeffs=rationals):
    n = draw(st.sampled_from(list(dims)))
    return draw(forms(n, 3, coeffs))


@st.composite
def mixed_forms(draw, dim, max_terms=3):
    out = Form.zero(dim)
    for _ in range(draw(st.integers(1, max_terms))):
        k = draw(st.integers(0, dim))
        out = out + draw(forms(dim, k, max_terms=1))
    return out
