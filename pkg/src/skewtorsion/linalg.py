"""Small dense exact matrices over Q(sqrt 3)(i) and certified spectra.

Eigenvalues are found in floating point, snapped to nearby elements of
Q(sqrt 3), and then certified exactly: the Lagrange projectors built from the
snapped values must resolve the identity and satisfy ``M P = lambda P``.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .scalar import ComplexScalar, Scalar, as_scalar

_ZERO = ComplexScalar(0)
_ONE = ComplexScalar(1)

DEFAULT_RESIDUAL_TOL = 1e-9
SNAP_TOL = 1e-7
MAX_SNAP_DENOMINATOR = 10**5
TIGHT_SNAP_TOL = 1e-11


class SpectrumError(ValueError):
    """Eigenvalues could not be certified as exact Scalars."""


class ExactMatrix:
    """Square matrix with :class:`ComplexScalar` entries (immutable)."""

    __slots__ = ("rows", "size")

    def __init__(self, rows):
        rows = tuple(tuple(_to_complex(x) for x in row) for row in rows)
        size = len(rows)
        if any(len(r) != size for r in rows):
            raise ValueError("matrix must be square")
        self.rows = rows
        self.size = size

    @classmethod
    def _raw(cls, rows, like=None):
        obj = cls.__new__(cls)
        obj.rows = rows
        obj.size = len(rows)
        if like is not None:
            obj._copy_meta(like)
        return obj

    def _copy_meta(self, other):
        pass

    @classmethod
    def identity(cls, size):
        return cls._raw(tuple(tuple(_ONE if i == j else _ZERO for j in range(size)) for i in range(size)))

    @classmethod
    def zeros(cls, size):
        return cls._raw(tuple((_ZERO,) * size for _ in range(size)))

    @classmethod
    def diag(cls, values):
        vals = [_to_complex(v) for v in values]
        n = len(vals)
        return cls._raw(tuple(tuple(vals[i] if i == j else _ZERO for j in range(n)) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    # arithmetic -------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, ExactMatrix):
            raise TypeError("expected an ExactMatrix")
        if other.size != self.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return self + self.identity(self.size).scale(other)
        self._check(other)
        rows = tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return type(self)._raw(rows, like=self)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw(tuple(tuple(-x for x in r) for r in self.rows), like=self)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k):
        k = _to_complex(k)
        rows = tuple(tuple(x * k if not x.is_zero() else _ZERO for x in r) for r in self.rows)
        return type(self)._raw(rows, like=self)

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            return self @ other
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __matmul__(self, other):
        self._check(other)
        n = self.size
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            nz = [(k, x) for k, x in enumerate(r) if not x.is_zero()]
            row = []
            for j in range(n):
                col = cols[j]
                acc = _ZERO
                for k, x in nz:
                    y = col[k]
                    if not y.is_zero():
                        acc = acc + x * y
                row.append(acc)
            out.append(tuple(row))
        return type(self)._raw(tuple(out), like=self)

    def __pow__(self, k: int):
        out = self.identity(self.size)
        out = type(self)._raw(out.rows, like=self)
        for _ in range(k):
            out = out @ self
        return out

    def adjoint(self):
        rows = tuple(tuple(self.rows[j][i].conjugate() for j in range(self.size)) for i in range(self.size))
        return type(self)._raw(rows, like=self)

    def transpose(self):
        rows = tuple(tuple(self.rows[j][i] for j in range(self.size)) for i in range(self.size))
        return type(self)._raw(rows, like=self)

    def trace(self) -> ComplexScalar:
        acc = _ZERO
        for i in range(self.size):
            acc = acc + self.rows[i][i]
        return acc

    def conjugated(self, p: "ExactMatrix", p_inv: "ExactMatrix"):
        """``p_inv @ self @ p`` (change of basis to the columns of ``p``)."""
        return type(self)._raw((p_inv @ self @ p).rows, like=self)

    # predicates -------------------------------------------------------------

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def __eq__(self, other):
        if isinstance(other, ExactMatrix):
            return self.size == other.size and self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def is_hermitian(self) -> bool:
        return self == self.adjoint()

    def is_skew_hermitian(self) -> bool:
        return self == -self.adjoint()

    def is_diagonal(self) -> bool:
        return all(x.is_zero() for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def diagonal(self) -> list:
        return [self.rows[i][i] for i in range(self.size)]

    def commutes_with(self, other) -> bool:
        return (self @ other) == (other @ self)

    def block(self, indices) -> "ExactMatrix":
        idx = list(indices)
        return ExactMatrix._raw(tuple(tuple(self.rows[i][j] for j in idx) for i in idx))

    # numerics ---------------------------------------------------------------

    def to_numpy(self) -> np.ndarray:
        return np.array([[complex(x) for x in r] for r in self.rows], dtype=complex)

    def inverse(self) -> "ExactMatrix":
        """Exact inverse by Gauss-Jordan elimination."""
        n = self.size
        aug = [list(r) + [_ONE if i == j else _ZERO for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = aug[col][col].inverse()
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and not aug[r][col].is_zero():
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return type(self)._raw(tuple(tuple(r[n:]) for r in aug), like=self)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"{type(self).__name__}[{body}]"


def _to_complex(x) -> ComplexScalar:
    if isinstance(x, ComplexScalar):
        return x
    if isinstance(x, tuple) and len(x) == 2:
        return ComplexScalar(x[0], x[1])
    return ComplexScalar(as_scalar(x))


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append(tuple(x * y for x in ra for y in rb))
    return ExactMatrix._raw(tuple(rows))


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------


def float_spectrum(m: ExactMatrix, tol: float = DEFAULT_RESIDUAL_TOL) -> list[float]:
    """Sorted eigenvalues of a Hermitian matrix, residual-checked."""
    if not m.is_hermitian():
        raise SpectrumError("spectrum requires an exactly Hermitian matrix")
    a = m.to_numpy()
    w, v = np.linalg.eigh(a)
    scale = max(1.0, float(np.linalg.norm(a, 2)))
    resid = np.linalg.norm(a @ v - v * w, axis=0)
    if resid.size and resid.max() > tol * scale:
        raise SpectrumError(f"eigen-residual {resid.max():.3e} exceeds {tol:g}*||m||")
    return [float(x) for x in w]


def snap(x: float, tol: float = SNAP_TOL) -> Scalar | None:
    """Simplest element ``(p + q sqrt 3) / d`` of Q(sqrt 3) near ``x``.

    Rationals with ``d <= 36`` are accepted within ``tol`` (relative).
    Irrational candidates and large denominators are denser, so they must
    sit within ``TIGHT_SNAP_TOL``.  The caller certifies the result exactly.
    """
    scale = max(1.0, abs(x))
    r = Fraction(x).limit_denominator(36)
    if abs(float(r) - x) <= tol * scale:
        return Scalar(r)
    tight = TIGHT_SNAP_TOL * scale
    root3 = math.sqrt(3.0)
    for den in range(1, 37):
        # p and q sqrt3 may nearly cancel, so q is not bounded by |x| alone
        qmax = int((2 * abs(x) + 8) * den / root3) + 1
        for q in sorted(range(-qmax, qmax + 1), key=abs):
            p = round(x * den - q * root3)
            if abs((p + q * root3) / den - x) <= tight:
                return Scalar(Fraction(p, den), Fraction(q, den))
    r = Fraction(x).limit_denominator(MAX_SNAP_DENOMINATOR)
    if abs(float(r) - x) <= tight:
        return Scalar(r)
    return None


def cluster(values: list[float], tol: float) -> list[tuple[float, int]]:
    out: list[list] = []
    for v in sorted(values):
        if out and abs(v - out[-1][0]) <= tol * max(1.0, abs(v)):
            out[-1][1] += 1
        else:
            out.append([v, 1])
    return [(v, k) for v, k in out]


def split_by(m: ExactMatrix, tol: float = DEFAULT_RESIDUAL_TOL):
    """Exact spectral projectors of a Hermitian matrix with known eigenvalues.

    Returns ``[(eigenvalue, projector), ...]`` sorted by eigenvalue.  Each
    projector is the Lagrange polynomial in ``m``; the call succeeds only if
    the projectors are certified exactly (idempotent, sum to identity and
    ``m P = lambda P``).
    """
    values = float_spectrum(m, tol)
    groups = cluster(values, 1e-6)
    exact = []
    for v, _ in groups:
        s = snap(v)
        if s is None:
            raise SpectrumError(f"eigenvalue {v!r} is not recognisable in Q(sqrt 3)")
        exact.append(s)
    if len(set(exact)) != len(exact):
        raise SpectrumError("distinct numerical eigenvalues snapped to the same Scalar")
    ident = m.identity(m.size)
    projectors = []
    for k, lam in enumerate(exact):
        p = ident
        for j, mu in enumerate(exact):
            if j == k:
                continue
            p = p @ (m - ident.scale(mu)).scale((lam - mu).inverse())
        projectors.append(p)
    total = ExactMatrix.zeros(m.size)
    for lam, p in zip(exact, projectors):
        if p.is_zero() or m @ p != p.scale(lam):
            raise SpectrumError(f"eigenvalue {lam} failed exact certification")
        total = total + p
    if total != ident:
        raise SpectrumError("projectors do not resolve the identity")
    return list(zip(exact, projectors))


def exact_spectrum(m: ExactMatrix, tol: float = DEFAULT_RESIDUAL_TOL) -> list[Scalar]:
    """Certified eigenvalue multiset, sorted ascending."""
    out = []
    for lam, p in split_by(m, tol):
        rank = p.trace()
        if not rank.is_real() or not rank.re.is_rational() or rank.re.rat.denominator != 1:
            raise SpectrumError("projector trace is not an integer")
        out.extend([lam] * int(rank.re.rat))
    return sorted(out, key=float)
