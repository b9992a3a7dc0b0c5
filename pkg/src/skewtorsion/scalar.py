"""Exact arithmetic in Q(sqrt 3) and its Gaussian extension Q(sqrt 3)(i).

Every coefficient that occurs in the catalog geometries lives in Q(sqrt 3),
and spinor matrices additionally need the imaginary unit.  Rationals are
stored as ``gmpy2.mpq`` which is always kept in lowest terms with a positive
denominator.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq, is_square, isqrt

__all__ = [
    "Scalar",
    "ComplexScalar",
    "as_scalar",
    "parse_scalar",
    "rational_sqrt",
    "SQRT3",
]

_SQRT3_FLOAT = math.sqrt(3.0)
_MPQ = type(mpq(0))


def _q(x) -> mpq:
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        return mpq(x)
    if isinstance(x, str):
        return mpq(Fraction(x.strip()))
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class Scalar:
    """Element ``rat + root3 * sqrt(3)`` of the field Q(sqrt 3)."""

    __slots__ = ("rat", "root3")

    def __init__(self, rat=0, root3=0):
        object.__setattr__(self, "rat", _q(rat))
        object.__setattr__(self, "root3", _q(root3))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.rat == 0 and self.root3 == 0

    def is_rational(self) -> bool:
        return self.root3 == 0

    def sign(self) -> int:
        """Exact sign of ``a + b sqrt 3``."""
        a, b = self.rat, self.root3
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with 3 b^2
        diff = a * a - 3 * b * b
        return sa if diff > 0 else sb

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.rat + other.rat, self.root3 + other.root3)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.rat, -self.root3)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.rat - other.rat, self.root3 - other.root3)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.rat, self.root3, other.rat, other.root3
        return Scalar(a * c + 3 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate3(self) -> "Scalar":
        """Galois conjugate ``a - b sqrt 3``."""
        return Scalar(self.rat, -self.root3)

    def norm3(self) -> mpq:
        return self.rat * self.rat - 3 * self.root3 * self.root3

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero Scalar")
        n = self.norm3()
        return Scalar(self.rat / n, -self.root3 / n)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = Scalar(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.rat == other.rat and self.root3 == other.root3

    def __hash__(self):
        if self.root3 == 0:
            return hash(self.rat)
        return hash((self.rat, self.root3))

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() <= 0

    def __gt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() > 0

    def __ge__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return not self.is_zero()

    def __float__(self):
        return float(self.rat) + float(self.root3) * _SQRT3_FLOAT

    # -- text ---------------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction, _MPQ)):
        return Scalar(x)
    return NotImplemented


def as_scalar(x) -> Scalar:
    """Convert ints, fractions, grammar strings and Scalars to ``Scalar``."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, (int, Fraction, _MPQ)):
        return Scalar(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Scalar")


SQRT3 = Scalar(0, 1)

_RATIONAL = r"-?\d+(?:/\d+)?"
_TERM_RE = re.compile(rf"^({_RATIONAL})(\*s3)?$")


def _format_rational(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(s: Scalar) -> str:
    """Canonical text: ``"2"``, ``"-1/2"``, ``"1/2+1/3*s3"``, ``"-1*s3"``."""
    parts = []
    if s.rat != 0 or s.root3 == 0:
        parts.append(_format_rational(s.rat))
    if s.root3 != 0:
        parts.append(_format_rational(s.root3) + "*s3")
    return "+".join(parts)


def parse_scalar(text: str) -> Scalar:
    """Parse the scalar grammar ``term ("+" term)*``.

    ``term`` is a rational ``[-]digits[/digits]`` optionally followed by
    ``*s3``.  Whitespace is not part of the grammar.
    """
    if not isinstance(text, str) or not text:
        raise ValueError(f"malformed scalar {text!r}")
    rat = mpq(0)
    root3 = mpq(0)
    for term in text.split("+"):
        m = _TERM_RE.match(term)
        if m is None:
            raise ValueError(f"malformed scalar {text!r}")
        num, den = (m.group(1).split("/") + ["1"])[:2]
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        value = mpq(int(num), int(den))
        if m.group(2):
            root3 += value
        else:
            rat += value
    return Scalar(rat, root3)


def rational_sqrt(q) -> mpq | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    q = _q(q)
    if q < 0:
        return None
    p, d = q.numerator, q.denominator
    if is_square(p) and is_square(d):
        return mpq(isqrt(p), isqrt(d))
    return None


class ComplexScalar:
    """Element ``re + i*im`` with ``re, im`` in Q(sqrt 3).

    Stored as four rationals ``(a, b, c, d)`` meaning
    ``(a + b sqrt3) + i (c + d sqrt3)``; matrix products spend most of
    their time here, so the components are kept flat.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, re=0, im=0):
        re = as_scalar(re)
        im = as_scalar(im)
        self.a, self.b, self.c, self.d = re.rat, re.root3, im.rat, im.root3

    @classmethod
    def _raw(cls, a, b, c, d) -> "ComplexScalar":
        z = cls.__new__(cls)
        z.a, z.b, z.c, z.d = a, b, c, d
        return z

    @property
    def re(self) -> Scalar:
        return Scalar(self.a, self.b)

    @property
    def im(self) -> Scalar:
        return Scalar(self.c, self.d)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def is_real(self) -> bool:
        return self.c == 0 and self.d == 0

    def conjugate(self) -> "ComplexScalar":
        return ComplexScalar._raw(self.a, self.b, -self.c, -self.d)

    def __add__(self, other):
        o = _ccoerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ComplexScalar._raw(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = _ccoerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ComplexScalar._raw(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rsub__(self, other):
        o = _ccoerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self):
        return ComplexScalar._raw(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        o = _ccoerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = o.a, o.b, o.c, o.d
        # (x + iy)(u + iv) with x=a+b s, y=c+d s, u=e+f s, v=g+h s, s^2=3
        xu_r = a * e + 3 * b * f
        xu_s = a * f + b * e
        yv_r = c * g + 3 * d * h
        yv_s = c * h + d * g
        xv_r = a * g + 3 * b * h
        xv_s = a * h + b * g
        yu_r = c * e + 3 * d * f
        yu_s = c * f + d * e
        return ComplexScalar._raw(xu_r - yv_r, xu_s - yv_s, xv_r + yu_r, xv_s + yu_s)

    __rmul__ = __mul__

    def abs2(self) -> Scalar:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "ComplexScalar":
        n = self.abs2()
        if n.is_zero():
            raise ZeroDivisionError("inverse of zero ComplexScalar")
        inv = n.inverse()
        return ComplexScalar(self.re * inv, -self.im * inv)

    def __truediv__(self, other):
        o = _ccoerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __eq__(self, other):
        o = _ccoerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.c == o.c and self.d == o.d

    def __hash__(self):
        if self.c == 0 and self.d == 0:
            return hash(Scalar(self.a, self.b))
        return hash((self.a, self.b, self.c, self.d))

    def __complex__(self):
        return complex(
            float(self.a) + float(self.b) * _SQRT3_FLOAT,
            float(self.c) + float(self.d) * _SQRT3_FLOAT,
        )

    def __str__(self):
        if self.is_real():
            return str(self.re)
        if self.a == 0 and self.b == 0:
            return f"i*({self.im})"
        return f"{self.re}+i*({self.im})"

    def __repr__(self):
        return f"ComplexScalar({self})"


def _ccoerce(x):
    if isinstance(x, ComplexScalar):
        return x
    if isinstance(x, Scalar):
        return ComplexScalar._raw(x.rat, x.root3, mpq(0), mpq(0))
    if isinstance(x, (int, Fraction, _MPQ)):
        return ComplexScalar._raw(mpq(x), mpq(0), mpq(0), mpq(0))
    if isinstance(x, complex):
        return NotImplemented
    return NotImplemented


I = ComplexScalar(0, 1)
