"""Exterior algebra over an orthonormal frame of R^n with Q(sqrt 3) coefficients.

Blades are strictly increasing tuples of 1-based frame indices; ``()`` is the
unit 0-form.  ``Form`` is also the carrier of Clifford elements (see
``skewtorsion.clifford``): the two algebras share the blade basis and differ
only in the product.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping

from .scalar import Scalar, as_scalar, parse_scalar

MAX_DIM = 8

Blade = tuple  # strictly increasing tuple of ints in 1..n


def permutation_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (0 if an entry repeats)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _check_blade(blade, dim):
    if any(b2 <= b1 for b1, b2 in zip(blade, blade[1:])):
        raise ValueError(f"blade indices must be strictly increasing: {blade}")
    if blade and (blade[0] < 1 or blade[-1] > dim):
        raise ValueError(f"blade {blade} out of range for dimension {dim}")


class Form:
    """Mixed-degree element of the exterior algebra of R^n."""

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping | Iterable = ()):
        if not 1 <= dim <= MAX_DIM:
            raise ValueError(f"dimension must lie in 1..{MAX_DIM}, got {dim}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for blade, coeff in items:
            blade = tuple(blade)
            coeff = as_scalar(coeff)
            sign = permutation_sign(blade)
            if sign == 0:
                continue
            if sign < 0:
                coeff = -coeff
            blade = tuple(sorted(blade))
            _check_blade(blade, dim)
            total = clean.get(blade, Scalar(0)) + coeff
            if total.is_zero():
                clean.pop(blade, None)
            else:
                clean[blade] = total
        self.dim = dim
        self._terms = dict(sorted(clean.items(), key=lambda kv: (len(kv[0]), kv[0])))
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def _from_clean(cls, dim, terms):
        obj = cls.__new__(cls)
        obj.dim = dim
        obj._terms = dict(sorted(terms.items(), key=lambda kv: (len(kv[0]), kv[0])))
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, dim):
        return cls._from_clean(dim, {})

    @classmethod
    def one(cls, dim):
        return cls._from_clean(dim, {(): Scalar(1)})

    @classmethod
    def basis(cls, dim, *indices, coeff=1):
        return cls(dim, {tuple(indices): coeff})

    @classmethod
    def scalar(cls, dim, value):
        return cls(dim, {(): value})

    # access ---------------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, blade) -> Scalar:
        return self._terms.get(tuple(blade), Scalar(0))

    def degrees(self) -> set:
        return {len(b) for b in self._terms}

    def is_zero(self) -> bool:
        return not self._terms

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = self.degrees()
        if degree is None:
            return len(degs) <= 1
        return degs <= {degree}

    def scalar_part(self) -> Scalar:
        return self._terms.get((), Scalar(0))

    def part(self, degree: int):
        return self._like({b: c for b, c in self._terms.items() if len(b) == degree})

    def _like(self, terms):
        return type(self)._from_clean(self.dim, terms)

    def as_form(self) -> "Form":
        return Form._from_clean(self.dim, self._terms)

    # linear structure ------------------------------------------------------

    def _check_dim(self, other):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        if isinstance(other, Form):
            self._check_dim(other)
            out = dict(self._terms)
            for b, c in other._terms.items():
                s = out.get(b, Scalar(0)) + c
                if s.is_zero():
                    out.pop(b, None)
                else:
                    out[b] = s
            return self._like(out)
        try:
            return self + self._like({(): as_scalar(other)} if as_scalar(other) else {})
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return self._like({b: -c for b, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k) -> "Form":
        k = as_scalar(k)
        if k.is_zero():
            return self._like({})
        return self._like({b: c * k for b, c in self._terms.items()})

    def __mul__(self, other):
        # scalar multiplication only; Clifford product lives in the subclass
        if isinstance(other, Form):
            return NotImplemented
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        return self.scale(as_scalar(1) / as_scalar(other))

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if isinstance(other, Form):
            return self.dim == other.dim and self._terms == other._terms
        try:
            s = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self._terms == ({(): s} if s else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({self.dim}, {format_form(self)})"

    def __str__(self):
        return format_form(self)


def format_form(a: Form) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for blade, c in a.items():
        name = "e" + "".join(str(i) for i in blade) if blade else "1"
        parts.append(f"({c})*{name}" if blade else f"({c})")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------


def _merge_sign(left, right) -> int:
    """Sign of shuffling ``left + right`` into increasing order (disjoint)."""
    inversions = 0
    for j in right:
        inversions += sum(1 for i in left if i > j)
    return -1 if inversions & 1 else 1


def wedge(a: Form, b: Form) -> Form:
    """Exterior product; bilinear, associative, graded-commutative."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    out = {}
    for bl1, c1 in a.items():
        s1 = set(bl1)
        for bl2, c2 in b.items():
            if s1.intersection(bl2):
                continue
            sign = _merge_sign(bl1, bl2)
            blade = tuple(sorted(bl1 + bl2))
            term = c1 * c2
            if sign < 0:
                term = -term
            total = out.get(blade, Scalar(0)) + term
            if total.is_zero():
                out.pop(blade, None)
            else:
                out[blade] = total
    return Form._from_clean(a.dim, out)


def hook(k: int, a: Form) -> Form:
    """Interior product of the k-th frame vector with ``a``."""
    if not 1 <= k <= a.dim:
        raise ValueError(f"frame index {k} out of range 1..{a.dim}")
    out = {}
    for blade, c in a.items():
        if k not in blade:
            continue
        pos = blade.index(k)
        rest = blade[:pos] + blade[pos + 1:]
        out[rest] = -c if pos & 1 else c
    return a._like(out)


def hodge_star(a: Form) -> Form:
    """Hodge star for the orientation ``e_1 ^ ... ^ e_n``."""
    n = a.dim
    full = tuple(range(1, n + 1))
    out = {}
    for blade, c in a.items():
        comp = tuple(i for i in full if i not in blade)
        sign = permutation_sign(blade + comp)
        out[comp] = c if sign > 0 else -c
    return a._like(out)


def inner(a: Form, b: Form) -> Scalar:
    """Inner product making the increasing blades orthonormal."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    total = Scalar(0)
    for blade, c in a.items():
        d = b.coefficient(blade)
        if d:
            total = total + c * d
    return total


def norm2(a: Form) -> Scalar:
    return inner(a, a)


def sigma_T(t: Form) -> Form:
    """The 4-form ``(1/2) sum_k (e_k -| T) ^ (e_k -| T)`` of a 3-form."""
    if not t.is_homogeneous(3):
        raise ValueError("sigma_T needs a homogeneous 3-form")
    t = t.as_form()
    total = Form.zero(t.dim)
    for k in range(1, t.dim + 1):
        c = hook(k, t)
        if not c.is_zero():
            total = total + wedge(c, c)
    return total.scale(Scalar(1, 0) / 2)


def volume_form(dim: int) -> Form:
    return Form(dim, {tuple(range(1, dim + 1)): 1})


def basis_blades(dim: int, degree: int):
    return list(combinations(range(1, dim + 1), degree))


# ---------------------------------------------------------------------------
# JSON encoding:  [{"idx": [1, 2, 5], "c": "2"}, ...]
# ---------------------------------------------------------------------------


def form_to_json(a: Form) -> list:
    return [{"idx": list(blade), "c": str(c)} for blade, c in a.items()]


def form_from_json(dim: int, data: list, cls=Form) -> Form:
    if not isinstance(data, list):
        raise ValueError("form JSON must be a list of blade objects")
    terms = {}
    for item in data:
        idx = tuple(int(i) for i in item["idx"])
        if any(j <= i for i, j in zip(idx, idx[1:])):
            raise ValueError(f"blade indices must be strictly increasing: {idx}")
        _check_blade(idx, dim)
        if idx in terms:
            raise ValueError(f"duplicate blade {idx}")
        terms[idx] = parse_scalar(item["c"])
    return cls(dim, terms)
