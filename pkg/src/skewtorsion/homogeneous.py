"""Metric reductive Lie algebra data and the invariant geometry it determines.

A :class:`MetricReductiveAlgebra` stores structure constants over a combined
basis ``b_1, ..., b_n, b_{n+1}, ..., b_{n+k}`` in which the first ``n``
vectors are an orthonormal frame of ``m`` and the rest span ``h``.  Indices
are 1-based throughout, matching the blade convention of
:mod:`skewtorsion.exterior`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .exterior import Form, hodge_star, permutation_sign
from .scalar import Scalar, as_scalar, format_scalar, parse_scalar

_ZERO = Scalar(0)


class NotNaturallyReductive(ValueError):
    """The torsion candidate -g([X,Y]_m, Z) is not totally skew."""

    def __init__(self, triple, values):
        self.triple = triple
        self.values = values
        i, j, k = triple
        super().__init__(
            f"not naturally reductive: T({i},{j},{k}) = {values[0]} "
            f"but T({i},{k},{j}) = {values[1]}"
        )


class MetricReductiveAlgebra:
    """Structure constants of ``g = m + h`` with an orthonormal frame of ``m``."""

    def __init__(self, dim_m: int, dim_h: int, brackets: dict, validate: bool = True):
        if dim_m < 1 or dim_h < 0:
            raise ValueError("dim_m must be positive and dim_h non-negative")
        self.dim_m = dim_m
        self.dim_h = dim_h
        self.size = dim_m + dim_h
        table: dict = {}
        for (i, j), out in brackets.items():
            if not (1 <= i <= self.size and 1 <= j <= self.size):
                raise ValueError(f"bracket index out of range: ({i}, {j})")
            if i == j:
                if any(as_scalar(c) for c in out.values()):
                    raise ValueError(f"[b_{i}, b_{i}] must vanish")
                continue
            vec = {k: as_scalar(c) for k, c in out.items() if as_scalar(c)}
            if any(not 1 <= k <= self.size for k in vec):
                raise ValueError(f"bracket ({i}, {j}) has an output index out of range")
            if i > j:
                i, j = j, i
                vec = {k: -c for k, c in vec.items()}
            if (i, j) in table and table[(i, j)] != vec:
                raise ValueError(f"inconsistent brackets given for ({i}, {j})")
            if vec:
                table[(i, j)] = vec
        self._table = table
        if validate:
            self.check_jacobi()
            self.check_reductive()

    # brackets ---------------------------------------------------------------

    def bracket(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return dict(self._table.get((i, j), {}))
        return {k: -c for k, c in self._table.get((j, i), {}).items()}

    def bracket_vectors(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.bracket(i, j).items():
                    out[k] = out.get(k, _ZERO) + a * b * c
        return {k: c for k, c in out.items() if c}

    def m_part(self, vec: dict) -> dict:
        return {k: c for k, c in vec.items() if k <= self.dim_m}

    def h_part(self, vec: dict) -> dict:
        return {k: c for k, c in vec.items() if k > self.dim_m}

    def is_m(self, i: int) -> bool:
        return i <= self.dim_m

    # validation -------------------------------------------------------------

    def check_jacobi(self) -> None:
        for i, j, k in combinations(range(1, self.size + 1), 3):
            total: dict = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                inner = self.bracket(b, c)
                term = self.bracket_vectors({a: Scalar(1)}, inner)
                for key, val in term.items():
                    total[key] = total.get(key, _ZERO) + val
            if any(v for v in total.values()):
                raise ValueError(f"Jacobi identity fails on ({i}, {j}, {k})")

    def check_reductive(self) -> None:
        for a in range(self.dim_m + 1, self.size + 1):
            for i in range(1, self.dim_m + 1):
                if self.h_part(self.bracket(a, i)):
                    raise ValueError(f"[h, m] is not contained in m: [b_{a}, b_{i}]")
            for b in range(self.dim_m + 1, self.size + 1):
                if self.m_part(self.bracket(a, b)):
                    raise ValueError(f"h is not a subalgebra: [b_{a}, b_{b}]")

    # JSON -------------------------------------------------------------------

    @classmethod
    def from_json(cls, data: dict) -> "MetricReductiveAlgebra":
        brackets = {}
        for item in data.get("brackets", []):
            key = (int(item["i"]), int(item["j"]))
            if key in brackets:
                raise ValueError(f"duplicate bracket entry {key}")
            brackets[key] = {int(o["k"]): parse_scalar(o["c"]) for o in item["out"]}
        return cls(int(data["dim_m"]), int(data.get("dim_h", 0)), brackets)

    def to_json(self) -> dict:
        return {
            "dim_m": self.dim_m,
            "dim_h": self.dim_h,
            "brackets": [
                {"i": i, "j": j, "out": [{"k": k, "c": format_scalar(c)} for k, c in sorted(v.items())]}
                for (i, j), v in sorted(self._table.items())
            ],
        }


# ---------------------------------------------------------------------------
# torsion, d and delta
# ---------------------------------------------------------------------------


def torsion_candidate(L: MetricReductiveAlgebra, i: int, j: int, k: int) -> Scalar:
    """-g([b_i, b_j]_m, b_k) for frame indices of m."""
    return -L.bracket(i, j).get(k, _ZERO)


def canonical_torsion(L: MetricReductiveAlgebra) -> Form:
    """Torsion 3-form of the canonical connection.

    Raises :class:`NotNaturallyReductive` with the first triple on which the
    candidate fails to be skew in its last two slots.
    """
    n = L.dim_m
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                a = torsion_candidate(L, i, j, k)
                b = torsion_candidate(L, i, k, j)
                if a != -b:
                    raise NotNaturallyReductive((i, j, k), (a, b))
    terms = {}
    for blade in combinations(range(1, n + 1), 3):
        c = torsion_candidate(L, *blade)
        if c:
            terms[blade] = c
    return Form(n, terms)


def _evaluate(a: Form, vectors: list) -> Scalar:
    """a(v_1, ..., v_p) for vectors given as ``{index: coefficient}``."""
    total = _ZERO

    def rec(pos, idx, coeff):
        nonlocal total
        if pos == len(vectors):
            sign = permutation_sign(idx)
            if sign:
                c = a.coefficient(tuple(sorted(idx)))
                if c:
                    total = total + (c * coeff if sign > 0 else -(c * coeff))
            return
        for k, v in vectors[pos].items():
            if k not in idx:
                rec(pos + 1, idx + [k], coeff * v)

    rec(0, [], Scalar(1))
    return total


def invariant_d(L: MetricReductiveAlgebra, a: Form) -> Form:
    """Exterior derivative of an invariant form on m.

    da(X_0, ..., X_p) = sum_{i<j} (-1)^{i+j} a([X_i, X_j]_m, X_0, ..^i..^j.., X_p)
    """
    n = L.dim_m
    if a.dim != n:
        raise ValueError(f"form dimension {a.dim} does not match dim_m = {n}")
    out = Form.zero(n)
    for p in sorted(a.degrees()):
        part = a.part(p)
        terms = {}
        for blade in combinations(range(1, n + 1), p + 1):
            total = _ZERO
            for i, j in combinations(range(p + 1), 2):
                br = L.m_part(L.bracket(blade[i], blade[j]))
                if not br:
                    continue
                rest = [{blade[k]: Scalar(1)} for k in range(p + 1) if k not in (i, j)]
                val = _evaluate(part, [br] + rest)
                total = total + (val if (i + j) % 2 == 0 else -val)
            if total:
                terms[blade] = total
        out = out + Form(n, terms)
    return out


def codifferential(L: MetricReductiveAlgebra, a: Form) -> Form:
    """delta = (-1)^{n(p+1)+1} * d * on degree-p invariant forms."""
    n = L.dim_m
    out = Form.zero(n)
    for p in sorted(a.degrees()):
        val = hodge_star(invariant_d(L, hodge_star(a.part(p))))
        out = out + (val if (n * (p + 1) + 1) % 2 == 0 else -val)
    return out


# ---------------------------------------------------------------------------
# Levi-Civita curvature through the Nomizu map
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Curvature:
    """Riemann tensor ``R[(i, j, k)][l] = g(R(b_i, b_j) b_k, b_l)``, Ricci, Scal."""

    dim: int
    riemann: dict
    ricci: tuple
    scal: Scalar

    def value(self, i, j, k, l) -> Scalar:
        return self.riemann.get((i, j, k), {}).get(l, _ZERO)


def nomizu_map(L: MetricReductiveAlgebra) -> list:
    """Levi-Civita Nomizu map as matrices: ``lam[x][y]`` is the m-vector Λ(b_x)b_y."""
    n = L.dim_m
    lam = []
    for x in range(1, n + 1):
        rows = []
        for y in range(1, n + 1):
            vec = {}
            half_br = L.m_part(L.bracket(x, y))
            for z in range(1, n + 1):
                # 2g(U(X,Y),Z) = g([Z,X]_m, Y) + g(X, [Z,Y]_m)
                u = (L.bracket(z, x).get(y, _ZERO) + L.bracket(z, y).get(x, _ZERO)) / 2
                c = half_br.get(z, _ZERO) / 2 + u
                if c:
                    vec[z] = c
            rows.append(vec)
        lam.append(rows)
    return lam


def _apply(lam, x_vec: dict, y_vec: dict) -> dict:
    out: dict = {}
    for x, a in x_vec.items():
        for y, b in y_vec.items():
            for z, c in lam[x - 1][y - 1].items():
                out[z] = out.get(z, _ZERO) + a * b * c
    return {k: v for k, v in out.items() if v}


def nomizu_curvature(L: MetricReductiveAlgebra) -> Curvature:
    """R(X,Y)Z = Λ_X Λ_Y Z - Λ_Y Λ_X Z - Λ([X,Y]_m) Z - [[X,Y]_h, Z]."""
    n = L.dim_m
    lam = nomizu_map(L)
    riemann = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            br = L.bracket(i, j)
            br_m, br_h = L.m_part(br), L.h_part(br)
            for k in range(1, n + 1):
                ek = {k: Scalar(1)}
                acc: dict = {}

                def add(vec, sign):
                    for key, v in vec.items():
                        acc[key] = acc.get(key, _ZERO) + (v if sign > 0 else -v)

                add(_apply(lam, {i: Scalar(1)}, _apply(lam, {j: Scalar(1)}, ek)), 1)
                add(_apply(lam, {j: Scalar(1)}, _apply(lam, {i: Scalar(1)}, ek)), -1)
                if br_m:
                    add(_apply(lam, br_m, ek), -1)
                if br_h:
                    add(L.bracket_vectors(br_h, ek), -1)
                acc = {key: v for key, v in acc.items() if v}
                if any(key > n for key in acc):
                    raise ValueError("reductive split violated: curvature leaves m")
                if acc:
                    riemann[(i, j, k)] = acc
    ricci = []
    for j in range(1, n + 1):
        row = []
        for k in range(1, n + 1):
            total = _ZERO
            for i in range(1, n + 1):
                total = total + riemann.get((i, j, k), {}).get(i, _ZERO)
            row.append(total)
        ricci.append(tuple(row))
    scal = _ZERO
    for j in range(n):
        scal = scal + ricci[j][j]
    return Curvature(n, riemann, tuple(ricci), scal)


def curvature_symmetry_defects(c: Curvature) -> list[str]:
    """Names of the curvature identities that fail (empty when all hold)."""
    n = c.dim
    rng = range(1, n + 1)
    bad = []
    if any(c.value(i, j, k, l) != -c.value(j, i, k, l) for i in rng for j in rng for k in rng for l in rng):
        bad.append("antisymmetry in X, Y")
    if any(c.value(i, j, k, l) != -c.value(i, j, l, k) for i in rng for j in rng for k in rng for l in rng):
        bad.append("skew endomorphism")
    for i in rng:
        for j in rng:
            for k in rng:
                for l in rng:
                    s = c.value(i, j, k, l) + c.value(j, k, i, l) + c.value(k, i, j, l)
                    if s:
                        bad.append("first Bianchi identity")
                        break
                else:
                    continue
                break
            else:
                continue
            break
    if any(c.ricci[a][b] != c.ricci[b][a] for a in range(n) for b in range(n)):
        bad.append("Ricci symmetry")
    return bad


def isotropy_action(L: MetricReductiveAlgebra, h_index: int, a: Form) -> Form:
    """Derivation action of an h generator on forms over m."""
    n = L.dim_m
    out = Form.zero(n)
    for blade, c in a.items():
        for pos, i in enumerate(blade):
            for k, v in L.bracket(h_index, i).items():
                # (A.a)(..X_i..) = -a(..[A,X_i]..); on blades e_i -> -ad_A^T e_i
                new = blade[:pos] + (k,) + blade[pos + 1:]
                if k in blade[:pos] + blade[pos + 1:]:
                    continue
                out = out + Form(n, {new: c * v})
    return out


def _nullspace(rows: list, ncols: int) -> list:
    """Exact nullspace of a matrix given as a list of rows of Scalars."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = Scalar(1) / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [_ZERO] * ncols
        vec[fcol] = Scalar(1)
        for row, pcol in enumerate(pivots):
            vec[pcol] = -m[row][fcol]
        basis.append(vec)
    return basis


def invariant_forms_basis(L: MetricReductiveAlgebra, degree: int) -> list[Form]:
    """Basis of the h-invariant forms of the given degree on m."""
    n = L.dim_m
    blades = list(combinations(range(1, n + 1), degree))
    if L.dim_h == 0:
        return [Form(n, {b: 1}) for b in blades]
    index = {b: k for k, b in enumerate(blades)}
    rows = []
    for a in range(n + 1, L.size + 1):
        images = [isotropy_action(L, a, Form(n, {b: 1})) for b in blades]
        for target in blades:
            rows.append([img.coefficient(target) for img in images])
    return [
        Form(n, {b: v[index[b]] for b in blades if v[index[b]]})
        for v in _nullspace(rows, len(blades))
    ]


# ---------------------------------------------------------------------------
# catalog algebras
# ---------------------------------------------------------------------------


def heisenberg_group_algebra() -> MetricReductiveAlgebra:
    """5-dim Heisenberg Lie algebra in the Sasakian frame: [X1,X2] = [X3,X4] = -2 X5.

    The sign makes d(e5) = 2(e12 + e34) under the invariant differential.
    As a bare Lie group the torsion candidate is not skew.
    """
    return MetricReductiveAlgebra(5, 0, {(1, 2): {5: -2}, (3, 4): {5: -2}})


def heisenberg_algebra() -> MetricReductiveAlgebra:
    """Naturally reductive presentation (H_5 x U(1)) / U(1) of the Heisenberg group.

    J rotates (X1, X2) and (X3, X4) and m is spanned by X1..X4 and
    X5' = X5 - 2J, so the induced metric is the left-invariant Sasakian one.
    """
    two, four = Scalar(2), Scalar(4)
    return MetricReductiveAlgebra(
        5,
        1,
        {
            (1, 2): {5: -two, 6: -four},
            (3, 4): {5: -two, 6: -four},
            (6, 1): {2: 1},
            (6, 2): {1: -1},
            (6, 3): {4: 1},
            (6, 4): {3: -1},
            (5, 1): {2: -two},
            (5, 2): {1: two},
            (5, 3): {4: -two},
            (5, 4): {3: two},
        },
    )


def abelian_algebra(n: int) -> MetricReductiveAlgebra:
    return MetricReductiveAlgebra(n, 0, {})


def so4_bracket(a: tuple, b: tuple) -> dict:
    """[E_ij, E_kl] in the basis E_pq (p < q), E_ij = e_i e_j^T - e_j e_i^T."""
    i, j = a
    k, l = b
    out: dict = {}

    def add(p, q, c):
        if p == q:
            return
        if p > q:
            p, q, c = q, p, -c
        out[(p, q)] = out.get((p, q), 0) + c

    if j == k:
        add(i, l, 1)
    if i == k:
        add(j, l, -1)
    if j == l:
        add(i, k, -1)
    if i == l:
        add(j, k, 1)
    return {key: c for key, c in out.items() if c}


# (E_ij, scale) for X_1..X_5 followed by the isotropy generator E_34
STIEFEL_FRAME = (
    ((1, 3), Scalar(0, 1)),
    ((2, 3), Scalar(0, 1)),
    ((1, 4), Scalar(0, 1)),
    ((2, 4), Scalar(0, 1)),
    ((1, 2), Scalar(3, 0) / 2),
    ((3, 4), Scalar(1)),
)


def algebra_from_so4(frame, dim_m: int) -> MetricReductiveAlgebra:
    """Structure constants of a scaled E_ij basis of so(4)."""
    lookup = {pair: idx for idx, (pair, _) in enumerate(frame, start=1)}
    brackets = {}
    for a, (pa, sa) in enumerate(frame, start=1):
        for b, (pb, sb) in enumerate(frame, start=1):
            if a >= b:
                continue
            out = {}
            for pair, c in so4_bracket(pa, pb).items():
                k = lookup[pair]
                out[k] = out.get(k, _ZERO) + Scalar(c) * sa * sb / frame[k - 1][1]
            brackets[(a, b)] = out
    return MetricReductiveAlgebra(dim_m, len(frame) - dim_m, brackets)


def stiefel_algebra() -> MetricReductiveAlgebra:
    """so(4) = m + so(2) for V_{4,2} with the Einstein-Sasakian frame.

    X1 = sqrt3 E13, X2 = sqrt3 E23, X3 = sqrt3 E14, X4 = sqrt3 E24,
    X5 = (3/2) E12 and h spanned by E34.  This ordering puts the contact
    differential in the form d(e5) = 2(e12 + e34).
    """
    return algebra_from_so4(STIEFEL_FRAME, 5)
