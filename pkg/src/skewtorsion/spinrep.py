"""Complex spin representations Delta_n as exact matrices.

Generators come from the usual tensor recursion with 2x2 blocks
``g1 = diag(i, -i)``, ``g2 = [[0, i], [i, 0]]``, ``T = [[0, -i], [i, 0]]``::

    e_{2j-1} = E x ... x E x g1 x T x ... x T
    e_{2j}   = E x ... x E x g2 x T x ... x T      (j-1 trailing T's)
    e_{2m+1} = +/- i T x ... x T                    (odd n only)

For odd n the two inequivalent modules differ by the sign of the last
generator.  The sign is fixed per dimension so that the volume element acts
by ``VOLUME_SIGN[n]``:

* n = 3: e_123 acts as +1;
* n = 5: e_12345 acts as +i, the choice that makes the adapted Stiefel
  frame reproduce the constant term of its Dirac operator;
* n = 7: e_1...7 acts as +1, which gives the G2 three-form
  ``e127 + e135 - e146 - e236 - e245 + e347 + e567`` the eigenvalue -7 on a
  line and +1 on its complement.
"""

from __future__ import annotations

from functools import lru_cache

from .exterior import Form
from .linalg import (
    DEFAULT_RESIDUAL_TOL,
    ExactMatrix,
    SpectrumError,
    exact_spectrum,
    float_spectrum,
    kron,
    split_by as _split_by,
)
from .scalar import ComplexScalar

__all__ = [
    "SpinEndomorphism",
    "SpectrumError",
    "build_generators",
    "act",
    "blade_matrix",
    "spectrum",
    "exact_spectrum",
    "commute",
    "split_by",
    "restrict",
    "spin_dim",
    "VOLUME_SIGN",
]

_I = ComplexScalar(0, 1)
_G1 = ExactMatrix([[_I, 0], [0, -_I]])
_G2 = ExactMatrix([[0, _I], [_I, 0]])
_T = ExactMatrix([[0, -_I], [_I, 0]])
_E = ExactMatrix.identity(2)

# action of e_1 ... e_n for odd n (a complex scalar multiple of Id)
VOLUME_SIGN = {3: ComplexScalar(1), 5: ComplexScalar(0, 1), 7: ComplexScalar(1)}


class SpinEndomorphism(ExactMatrix):
    """Exact endomorphism of the spin module Delta_n."""

    __slots__ = ("n",)

    def _copy_meta(self, other):
        self.n = getattr(other, "n", None)

    @classmethod
    def wrap(cls, n: int, m: ExactMatrix) -> "SpinEndomorphism":
        obj = cls._raw(m.rows)
        obj.n = n
        return obj

    @property
    def mat(self):
        return self.rows

    def identity_like(self) -> "SpinEndomorphism":
        return SpinEndomorphism.wrap(self.n, ExactMatrix.identity(self.size))


def spin_dim(n: int) -> int:
    return 2 ** (n // 2)


def _tensor(factors):
    out = factors[0]
    for f in factors[1:]:
        out = kron(out, f)
    return out


@lru_cache(maxsize=None)
def build_generators(n: int) -> tuple[SpinEndomorphism, ...]:
    """Matrices of e_1, ..., e_n acting on Delta_n (size 2^floor(n/2))."""
    if not 3 <= n <= 8:
        raise ValueError(f"unsupported dimension {n}; expected 3 <= n <= 8")
    m = n // 2
    gens = []
    for j in range(1, m + 1):
        lead = [_E] * (m - j)
        trail = [_T] * (j - 1)
        gens.append(_tensor(lead + [_G1] + trail))
        gens.append(_tensor(lead + [_G2] + trail))
    if n % 2:
        gens.append(_tensor([_T] * m).scale(_I))
        vol = gens[0]
        for g in gens[1:]:
            vol = vol @ g
        target = ExactMatrix.identity(vol.size).scale(VOLUME_SIGN[n])
        if vol != target:
            gens[-1] = -gens[-1]
    return tuple(SpinEndomorphism.wrap(n, g) for g in gens)


@lru_cache(maxsize=None)
def blade_matrix(n: int, blade: tuple) -> SpinEndomorphism:
    gens = build_generators(n)
    out = SpinEndomorphism.wrap(n, ExactMatrix.identity(spin_dim(n)))
    for i in blade:
        out = out @ gens[i - 1]
    return out


def act(a: Form) -> SpinEndomorphism:
    """Clifford action of ``a`` (any mixed-degree element) on Delta_n."""
    n = a.dim
    size = spin_dim(n)
    acc = [[ComplexScalar(0)] * size for _ in range(size)]
    for blade, c in a.items():
        bm = blade_matrix(n, blade)
        cc = ComplexScalar(c)
        # blade matrices are monomial: one nonzero entry per row
        for i, row in enumerate(bm.rows):
            for j, x in enumerate(row):
                if not x.is_zero():
                    acc[i][j] = acc[i][j] + x * cc
    return SpinEndomorphism.wrap(n, ExactMatrix(acc))


def identity(n: int) -> SpinEndomorphism:
    return SpinEndomorphism.wrap(n, ExactMatrix.identity(spin_dim(n)))


def spectrum(m: ExactMatrix, tol: float = DEFAULT_RESIDUAL_TOL) -> list[float]:
    """Floating eigenvalue multiset of an exactly Hermitian endomorphism."""
    return float_spectrum(m, tol)


def commute(a: ExactMatrix, b: ExactMatrix) -> bool:
    if a.size != b.size:
        raise ValueError("size mismatch")
    return a.commutes_with(b)


def split_by(t: ExactMatrix, tol: float = DEFAULT_RESIDUAL_TOL):
    """Certified ``[(eigenvalue, projector)]`` decomposition of ``t``."""
    n = getattr(t, "n", None)
    out = []
    for lam, p in _split_by(t, tol):
        out.append((lam, SpinEndomorphism.wrap(n, p) if n is not None else p))
    return out


def restrict(m: ExactMatrix, projector: ExactMatrix, tol: float = DEFAULT_RESIDUAL_TOL):
    """Certified spectrum of ``m`` on the range of a commuting projector.

    Works on ``P m P``; the kernel of the projector contributes zeros which
    are removed by multiplicity bookkeeping.
    """
    if not m.commutes_with(projector):
        raise ValueError("endomorphism does not commute with the projector")
    rank_c = projector.trace()
    rank = int(rank_c.re.rat)
    pmp = projector @ m @ projector
    spec = exact_spectrum(pmp, tol)
    # remove the zeros coming from the complement of the range
    extra = pmp.size - rank
    out = list(spec)
    for _ in range(extra):
        out.remove(next(x for x in out if x.is_zero()))
    return out
