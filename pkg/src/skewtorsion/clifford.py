"""Clifford algebra Cl(n) with e_i e_j + e_j e_i = -2 delta_ij.

Clifford elements share the blade carrier of :class:`~skewtorsion.exterior.Form`;
``CliffordElement`` only changes what ``*`` means.
"""

from __future__ import annotations

from .exterior import Form, hook, norm2, sigma_T
from .scalar import Scalar


def blade_product(left: tuple, right: tuple) -> tuple[int, tuple]:
    """Product of basis blades: ``e_left * e_right = sign * e_result``.

    Reordering contributes one sign per inversion between the two index
    lists, and every index shared by both blades contracts with e_i^2 = -1.
    """
    inversions = 0
    for j in right:
        for i in left:
            if i > j:
                inversions += 1
    common = len(set(left).intersection(right))
    sign = -1 if (inversions + common) & 1 else 1
    result = tuple(sorted(set(left).symmetric_difference(right)))
    return sign, result


class CliffordElement(Form):
    """Element of Cl(n) in the orthonormal blade basis."""

    __slots__ = ()

    def __mul__(self, other):
        if isinstance(other, Form):
            return clifford_mul(self, other)
        return super().__mul__(other)

    def __rmul__(self, other):
        if isinstance(other, Form):
            return clifford_mul(other, self)
        return super().__rmul__(other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = CliffordElement.one(self.dim)
        for _ in range(k):
            out = clifford_mul(out, self)
        return out


def embed(a: Form) -> CliffordElement:
    """Identify a form with the Clifford element on the same blades."""
    return CliffordElement._from_clean(a.dim, dict(a.items()))


def clifford_mul(a: Form, b: Form) -> CliffordElement:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    out: dict = {}
    for bl1, c1 in a.items():
        for bl2, c2 in b.items():
            sign, blade = blade_product(bl1, bl2)
            term = c1 * c2
            if sign < 0:
                term = -term
            total = out.get(blade, Scalar(0)) + term
            if total.is_zero():
                out.pop(blade, None)
            else:
                out[blade] = total
    return CliffordElement._from_clean(a.dim, out)


def contraction_square(t: Form) -> CliffordElement:
    """``sum_k (e_k -| T) * (e_k -| T)`` computed in the Clifford algebra."""
    if not t.is_homogeneous(3):
        raise ValueError("contraction_square needs a homogeneous 3-form")
    total = CliffordElement.zero(t.dim)
    for k in range(1, t.dim + 1):
        c = hook(k, t.as_form())
        if not c.is_zero():
            total = total + clifford_mul(c, c)
    return total


def torsion_square_identity(t: Form) -> CliffordElement:
    """Right-hand side ``-2 sigma_T + ||T||^2`` for comparison with T*T."""
    return embed(sigma_T(t)).scale(-2) + norm2(t)


def contraction_square_identity(t: Form) -> CliffordElement:
    """Right-hand side ``2 sigma_T - 3 ||T||^2``."""
    return embed(sigma_T(t)).scale(2) - norm2(t) * 3
