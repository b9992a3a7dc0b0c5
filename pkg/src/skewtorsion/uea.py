"""Invariant differential operators on a homogeneous space, in PBW normal form.

An :class:`OperatorPolynomial` is a sum ``sum_w C_w * g_w`` where ``w`` is a
word in Lie algebra generators (acting as left-invariant derivations on
vector-valued functions) and ``C_w`` is a constant matrix.  Coefficients
commute with the generators, so a product only has to reorder words, using
``g_j g_i = g_i g_j - [g_i, g_j]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .exterior import Form
from .homogeneous import algebra_from_so4
from .linalg import ExactMatrix, kron
from .scalar import ComplexScalar, Scalar, format_scalar
from .spinrep import act, build_generators, split_by

MAX_DEGREE = 2


class DegreeOverflow(ValueError):
    """A product would need words longer than the supported degree."""


class RelationError(ValueError):
    """Matrices do not satisfy the declared bracket relations."""


class LieRelations:
    """Brackets ``[g_i, g_j] = sum_k c_ijk g_k`` over 0-based generator indices."""

    def __init__(self, names, brackets: dict):
        self.names = tuple(names)
        self.count = len(self.names)
        table = {}
        for (i, j), out in brackets.items():
            vec = {k: ComplexScalar(c) if not isinstance(c, ComplexScalar) else c for k, c in out.items()}
            vec = {k: c for k, c in vec.items() if not c.is_zero()}
            if i == j:
                if vec:
                    raise ValueError("a generator must commute with itself")
                continue
            if i > j:
                i, j = j, i
                vec = {k: -c for k, c in vec.items()}
            if vec:
                table[(i, j)] = vec
        self._table = table

    def bracket(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return self._table.get((i, j), {})
        return {k: -c for k, c in self._table.get((j, i), {}).items()}

    @classmethod
    def from_algebra(cls, L, names=None) -> "LieRelations":
        names = names or [f"g{k}" for k in range(1, L.size + 1)]
        brackets = {}
        for i in range(1, L.size + 1):
            for j in range(i + 1, L.size + 1):
                brackets[(i - 1, j - 1)] = {k - 1: c for k, c in L.bracket(i, j).items()}
        return cls(names, brackets)

    def check_jacobi(self) -> bool:
        n = self.count
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    total: dict = {}
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        for m, x in self.bracket(b, c).items():
                            for r, y in self.bracket(a, m).items():
                                total[r] = total.get(r, ComplexScalar(0)) + x * y
                    if any(not v.is_zero() for v in total.values()):
                        return False
        return True

    def check_representation(self, rep) -> None:
        if len(rep) != self.count:
            raise RelationError("one matrix per generator is required")
        size = rep[0].size
        for i in range(self.count):
            for j in range(i + 1, self.count):
                lhs = rep[i] @ rep[j] - rep[j] @ rep[i]
                rhs = ExactMatrix.zeros(size)
                for k, c in self.bracket(i, j).items():
                    rhs = rhs + rep[k].scale(c)
                if lhs != rhs:
                    raise RelationError(f"[{self.names[i]}, {self.names[j]}] is not represented")


def _is_ordered(word) -> bool:
    return all(a <= b for a, b in zip(word, word[1:]))


class OperatorPolynomial:
    """Matrix-coefficient polynomial in the generators, kept in PBW order."""

    __slots__ = ("size", "terms")

    def __init__(self, size: int, terms=None):
        self.size = size
        clean = {}
        for word, c in (terms or {}).items():
            word = tuple(word)
            if not _is_ordered(word):
                raise ValueError(f"word {word} is not PBW-ordered; use normal_order")
            if c.size != size:
                raise ValueError("coefficient size mismatch")
            if not c.is_zero():
                clean[word] = c
        self.terms = dict(sorted(clean.items(), key=lambda kv: (len(kv[0]), kv[0])))

    @classmethod
    def constant(cls, m: ExactMatrix) -> "OperatorPolynomial":
        return cls(m.size, {(): m})

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word) -> ExactMatrix:
        return self.terms.get(tuple(word), ExactMatrix.zeros(self.size))

    def __add__(self, other: "OperatorPolynomial") -> "OperatorPolynomial":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return OperatorPolynomial(self.size, out)

    def __neg__(self):
        return OperatorPolynomial(self.size, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k) -> "OperatorPolynomial":
        return OperatorPolynomial(self.size, {w: c.scale(k) for w, c in self.terms.items()})

    def conjugated(self, p: ExactMatrix, p_inv: ExactMatrix) -> "OperatorPolynomial":
        return OperatorPolynomial(self.size, {w: p_inv @ c @ p for w, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, OperatorPolynomial) and self.size == other.size and self.terms == other.terms

    def __repr__(self):
        return f"OperatorPolynomial({self.size}, {len(self.terms)} terms)"


def normal_order(terms: dict, rel: LieRelations, size: int, rng: random.Random | None = None) -> OperatorPolynomial:
    """Rewrite arbitrary words into PBW order.

    With ``rng`` the inversion to rewrite is picked at random, which is how
    the confluence tests exercise different rewrite schedules.
    """
    pending = [(tuple(w), c) for w, c in terms.items()]
    done: dict = {}
    while pending:
        word, c = pending.pop(rng.randrange(len(pending)) if rng else -1)
        if c.is_zero():
            continue
        inversions = [k for k in range(len(word) - 1) if word[k] > word[k + 1]]
        if not inversions:
            done[word] = done[word] + c if word in done else c
            continue
        k = rng.choice(inversions) if rng else inversions[0]
        a, b = word[k], word[k + 1]
        pending.append((word[:k] + (b, a) + word[k + 2:], c))
        for g, x in rel.bracket(a, b).items():
            pending.append((word[:k] + (g,) + word[k + 2:], c.scale(x)))
    return OperatorPolynomial(size, done)


def multiply(p: OperatorPolynomial, q: OperatorPolynomial, rel: LieRelations,
             rng: random.Random | None = None) -> OperatorPolynomial:
    if p.size != q.size:
        raise ValueError("coefficient size mismatch")
    raw: dict = {}
    for w1, c1 in p.terms.items():
        for w2, c2 in q.terms.items():
            word = w1 + w2
            if len(word) > MAX_DEGREE:
                raise DegreeOverflow(f"degree {len(word)} exceeds the cap {MAX_DEGREE}")
            prod = c1 @ c2
            raw[word] = raw[word] + prod if word in raw else prod
    return normal_order(raw, rel, p.size, rng)


def evaluate_in_representation(p: OperatorPolynomial, rep, rel: LieRelations) -> ExactMatrix:
    """Replace generators by matrices: sum_w C_w (x) rep(w)."""
    rel.check_representation(rep)
    size = rep[0].size
    out = ExactMatrix.zeros(p.size * size)
    for word, c in p.terms.items():
        m = ExactMatrix.identity(size)
        for g in word:
            m = m @ rep[g]
        out = out + kron(c, m)
    return out


# ---------------------------------------------------------------------------
# reduction to scalar operators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScalarOperator:
    """Scalar-coefficient operator on one spinor line, with multiplicity."""

    names: tuple
    terms: dict  # word -> ComplexScalar
    multiplicity: int = 1
    m_count: int = 0

    def coefficient(self, word) -> ComplexScalar:
        return self.terms.get(tuple(word), ComplexScalar(0))

    def __str__(self):
        return format_operator(self)


def _format_complex(z: ComplexScalar) -> str:
    if z.im.is_zero():
        return format_scalar(z.re)
    if z.re.is_zero():
        im = z.im
        if im == Scalar(1):
            return "i"
        if im == Scalar(-1):
            return "-i"
        text = format_scalar(im)
        if text.startswith(("1*", "-1*")):
            text = text.replace("1*", "", 1)
        return f"{text}*i"
    return f"({format_scalar(z.re)}+({format_scalar(z.im)})*i)"


def format_operator(op: ScalarOperator) -> str:
    """Stable text like ``-3*sum(X^2) - 3/4 + 1*s3*i*X5``."""
    terms = dict(op.terms)
    parts = []
    squares = [(k, k) for k in range(op.m_count)]
    c0 = terms.get(squares[0]) if squares else None
    if c0 is not None and all(terms.get(w) == c0 for w in squares):
        parts.append(f"{_format_complex(c0)}*sum(X^2)")
        for w in squares:
            del terms[w]
    for word in sorted(terms, key=lambda w: ({2: 0, 0: 1}.get(len(w), 2), w)):
        c = terms[word]
        name = "*".join(op.names[g] for g in word)
        parts.append(f"{_format_complex(c)}*{name}" if word else _format_complex(c))
    if not parts:
        return "0"
    text = parts[0]
    for part in parts[1:]:
        text += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
    return text


def reduce_to_casimir(p: OperatorPolynomial, quasiperiodicity: dict, m_count: int,
                      names, shift=Scalar(0)) -> list[ScalarOperator]:
    """Substitute isotropy eigenvalues and split into scalar operators.

    ``quasiperiodicity`` maps an isotropy generator to its per-component
    eigenvalues.  After substitution every coefficient must be a normal
    matrix and all of them must commute; they are then diagonalised together
    and ``shift`` is subtracted from the constant term.
    """
    if p.is_zero():
        return []
    reduced: dict = {}
    for word, c in p.terms.items():
        coeff = c
        rest = list(word)
        while rest and rest[-1] in quasiperiodicity:
            vals = quasiperiodicity[rest.pop()]
            if len(vals) != p.size:
                raise ValueError("one isotropy eigenvalue per component is required")
            coeff = coeff @ ExactMatrix.diag(vals)
        if any(g in quasiperiodicity for g in rest):
            raise ValueError("isotropy generators must sit right-most in PBW order")
        key = tuple(rest)
        reduced[key] = reduced[key] + coeff if key in reduced else coeff
    reduced = {w: c for w, c in reduced.items() if not c.is_zero()}
    reduced[()] = reduced.get((), ExactMatrix.zeros(p.size)) - ExactMatrix.identity(p.size).scale(shift)
    mats = list(reduced.values())
    for a in mats:
        if not (a @ a.adjoint()) == (a.adjoint() @ a):
            raise ValueError("reduced coefficient is not normal")
        for b in mats:
            if not a.commutes_with(b):
                raise ValueError("reduced coefficients do not commute")
    # a Hermitian combination separating the joint eigenspaces
    probe = ExactMatrix.zeros(p.size)
    for k, a in enumerate(mats, start=1):
        herm = (a + a.adjoint()).scale(Scalar(k))
        skew = (a - a.adjoint()).scale(ComplexScalar(0, 1)).scale(Scalar(k * k + 7))
        probe = probe + herm + skew
    out = []
    for _, proj in split_by(probe):
        rank = int(proj.trace().re.rat)
        terms = {}
        for word, c in reduced.items():
            cp = c @ proj
            val = cp.trace() * ComplexScalar(Scalar(1) / rank)
            if cp != proj.scale(val):
                raise ValueError("coefficient is not scalar on a joint eigenspace")
            if not val.is_zero():
                terms[word] = val
        out.append(ScalarOperator(tuple(names), terms, rank, m_count))
    return sorted(out, key=format_operator)


# ---------------------------------------------------------------------------
# the Stiefel manifold V_{4,2}
# ---------------------------------------------------------------------------

_S3 = Scalar(0, 1)
_I = ComplexScalar(0, 1)

# unit-speed derivations Y_k = X_k / sqrt3, then the isotropy generator E34
STIEFEL_DERIVATIONS = (
    ((1, 3), Scalar(1)),
    ((2, 3), Scalar(1)),
    ((1, 4), Scalar(1)),
    ((2, 4), Scalar(1)),
    ((1, 2), _S3 / 2),
    ((3, 4), Scalar(1)),
)
STIEFEL_NAMES = ("X1", "X2", "X3", "X4", "X5", "E34")
STIEFEL_H = 5


def stiefel_relations() -> LieRelations:
    return LieRelations.from_algebra(algebra_from_so4(STIEFEL_DERIVATIONS, 5), STIEFEL_NAMES)


def so4_defining_representation(frame=STIEFEL_DERIVATIONS) -> list[ExactMatrix]:
    mats = []
    for (i, j), s in frame:
        rows = [[0] * 4 for _ in range(4)]
        rows[i - 1][j - 1] = s
        rows[j - 1][i - 1] = -s
        mats.append(ExactMatrix(rows))
    return mats


@dataclass(frozen=True)
class StiefelDirac:
    relations: LieRelations
    basis: ExactMatrix  # columns are the adapted spinor basis
    basis_inv: ExactMatrix
    dirac: OperatorPolynomial  # D^{1/3} in the adapted basis
    torsion: ExactMatrix  # rho(T) in the adapted basis
    isotropy: tuple  # per-component eigenvalues of E34 on spinor fields


def _column(m: ExactMatrix, j: int) -> list:
    return [m[i, j] for i in range(m.size)]


def _nonzero_column(p: ExactMatrix) -> list:
    for j in range(p.size):
        col = _column(p, j)
        if any(not x.is_zero() for x in col):
            return col
    raise ValueError("zero projector")


def stiefel_adapted_basis() -> tuple[ExactMatrix, ExactMatrix]:
    """Spinor basis in which the isotropy lift and rho(T) take block form.

    Components 1, 2 are eigenvectors of rho(e13 + e24) for -2i and +2i;
    component 3 spans part of its kernel and component 4 is
    -(1/2) rho(e12 + e34) applied to component 3.
    """
    k = act(Form(5, {(1, 3): 1, (2, 4): 1}))
    herm = k.scale(_I)
    proj = {lam: p for lam, p in split_by(herm)}
    v1 = _nonzero_column(proj[Scalar(2)])
    v2 = _nonzero_column(proj[Scalar(-2)])
    v3 = _nonzero_column(proj[Scalar(0)])
    rot = act(Form(5, {(1, 2): 1, (3, 4): 1})).scale(Scalar(-1) / 2)
    v4 = [sum((rot[i, j] * v3[j] for j in range(4)), ComplexScalar(0)) for i in range(4)]
    basis = ExactMatrix([[v[i] for v in (v1, v2, v3, v4)] for i in range(4)])
    return basis, basis.inverse()


def stiefel_s_matrix() -> ExactMatrix:
    """(5i/2) times the rotation block on components 3, 4."""
    h = ComplexScalar(0, Scalar(5) / 2)
    z = ComplexScalar(0)
    return ExactMatrix([[z, z, z, z], [z, z, z, z], [z, z, z, h], [z, z, -h, z]])


def build_stiefel_dirac() -> StiefelDirac:
    """D^{1/3} = sqrt3 sum rho(e_k) Y_k + S + (1/4) rho(T) in the adapted basis."""
    rel = stiefel_relations()
    basis, inv = stiefel_adapted_basis()
    gens = build_generators(5)
    t = act(Form(5, {(1, 2, 5): 2, (3, 4, 5): 2}))
    terms = {}
    for k in range(5):
        terms[(k,)] = (inv @ gens[k] @ basis).scale(_S3)
    t_ad = inv @ t @ basis
    # components 1, 2 must span S_0 and components 3, 4 must span S_4 + S_-4
    if not (t_ad.block([0, 1]).is_zero() and (t_ad @ t_ad).block([2, 3]) == ExactMatrix.identity(2).scale(Scalar(16))):
        raise ValueError("adapted basis does not split along the torsion eigenspaces")
    for i in (0, 1):
        for j in (2, 3):
            if not (t_ad[i, j].is_zero() and t_ad[j, i].is_zero()):
                raise ValueError("adapted basis does not split along the torsion eigenspaces")
    terms[()] = stiefel_s_matrix() + t_ad.scale(Scalar(1) / 4)
    # isotropy lift sigma(E34) = -(1/2) rho(e13 + e24); spinor fields satisfy
    # E34(psi) = -sigma(E34) psi
    lift = inv @ act(Form(5, {(1, 3): 1, (2, 4): 1})).scale(Scalar(1) / 2) @ basis
    if not lift.is_diagonal():
        raise ValueError("isotropy lift is not diagonal in the adapted basis")
    return StiefelDirac(rel, basis, inv, OperatorPolynomial(4, terms), t_ad, tuple(lift.diagonal()))


def stiefel_square(sd: StiefelDirac | None = None) -> OperatorPolynomial:
    sd = sd or build_stiefel_dirac()
    return multiply(sd.dirac, sd.dirac, sd.relations)


def stiefel_casimir(kp=Scalar(3)) -> list[ScalarOperator]:
    """Reduced Casimir operators (D^{1/3})^2 - kp on S_0 and S_4 + S_-4."""
    sd = build_stiefel_dirac()
    sq = stiefel_square(sd)
    return reduce_to_casimir(sq, {STIEFEL_H: list(sd.isotropy)}, 5, STIEFEL_NAMES, kp)
