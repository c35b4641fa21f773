"""Poisson brackets on the triangular chart.

Coordinates are E_i^j (column i, row j) named ``E[i][j]``.  The Darboux
bracket pi_0 is constant; the recursion operators J_x, J_y are the
endomorphisms of the tangent bundle induced by multiplication by x and y,
and every chart bracket arises as pi = f(J_x, J_y) pi_0.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .charts import (
    ChartPoint,
    chart_ring,
    coords,
    haiman_to_es,
    symbolic_chart,
    var_name,
)
from .exactalg import linalg
from .exactalg.forms import TwoForm, trace_d_wedge_d
from .exactalg.matrix import PolyMatrix, ShapeError
from .exactalg.poly import Poly, poly_ring

__all__ = [
    "PoissonStructure",
    "RecursionOperator",
    "darboux_structure",
    "recursion_operator",
    "structure_from_f",
    "aff_structure",
    "quad_nodal_structure",
    "bracket",
    "jacobi_defect",
    "coadjoint_action",
    "hamiltonian_vector_field",
    "mult_matrix_symplectic_form",
    "multiplication_matrices_symbolic",
    "darboux_form_mixed",
    "resolve_jobs",
]


def _delta(a, b) -> int:
    return 1 if a == b else 0


class PoissonStructure:
    """A skew table {E_alpha, E_beta} of polynomials in the E variables.

    Only pairs alpha < beta (in ``coords(k)`` order) are stored.
    """

    __slots__ = ("k", "ring", "index", "_entries")

    def __init__(self, k: int, entries: dict):
        self.k = k
        self.ring = chart_ring(k)
        cs = coords(k)
        self.index = {c: n for n, c in enumerate(cs)}
        stored = {}
        for (a, b), p in entries.items():
            if not isinstance(p, Poly):
                p = self.ring.const(p)
            p = p.to_ring(self.ring)
            ia, ib = self.index[a], self.index[b]
            if ia == ib:
                if not p.is_zero():
                    raise ValueError(f"nonzero diagonal entry at {a}")
                continue
            if ia > ib:
                a, b, p = b, a, -p
            if (a, b) in stored:
                if stored[(a, b)] != p:
                    raise ValueError(f"table is not skew at {a}, {b}")
                continue
            if not p.is_zero():
                stored[(a, b)] = p
        self._entries = stored

    @classmethod
    def from_matrix(cls, k: int, matrix) -> "PoissonStructure":
        """From a full m x m table; checks skew-symmetry."""
        cs = coords(k)
        entries = {}
        for r, a in enumerate(cs):
            if not matrix[r][r] == 0:
                raise ValueError(f"nonzero diagonal entry at {a}")
            for s in range(r + 1, len(cs)):
                b = cs[s]
                p, q = matrix[r][s], matrix[s][r]
                if not (p + q) == 0:
                    raise ValueError(f"table is not skew at {a}, {b}")
                entries[(a, b)] = p
        return cls(k, entries)

    def entry(self, a, b) -> Poly:
        a, b = tuple(a), tuple(b)
        if a == b:
            return self.ring.zero()
        if self.index[a] < self.index[b]:
            return self._entries.get((a, b), self.ring.zero())
        p = self._entries.get((b, a))
        return -p if p is not None else self.ring.zero()

    __call__ = entry

    def items(self):
        """Nonzero entries (alpha, beta, poly) with alpha before beta."""
        for a, b in sorted(self._entries, key=lambda ab: (self.index[ab[0]], self.index[ab[1]])):
            yield a, b, self._entries[(a, b)]

    def matrix(self, order=None):
        order = coords(self.k) if order is None else list(order)
        return [[self.entry(a, b) for b in order] for a in order]

    def __eq__(self, other):
        if not isinstance(other, PoissonStructure):
            return NotImplemented
        return self.k == other.k and self._entries == other._entries

    def __hash__(self):
        return hash((self.k, frozenset(self._entries.items())))

    def __add__(self, other):
        keys = set(self._entries) | set(other._entries)
        return PoissonStructure(self.k, {ab: self.entry(*ab) + other.entry(*ab) for ab in keys})

    def __neg__(self):
        return PoissonStructure(self.k, {ab: -p for ab, p in self._entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return PoissonStructure(self.k, {ab: p * c for ab, p in self._entries.items()})

    __rmul__ = __mul__

    def degrees(self) -> set[int]:
        """Total degrees of all monomials that occur."""
        out = set()
        for p in self._entries.values():
            out |= {sum(e) for e in p.terms}
        return out

    def is_homogeneous(self, degree: int) -> bool:
        return all(p.is_homogeneous(degree) for p in self._entries.values())

    def __repr__(self):
        return f"PoissonStructure(k={self.k}, {len(self._entries)} nonzero entries)"


# -- Darboux bracket and recursion operators ----------------------------------


def _darboux_value(i, j, a, b) -> int:
    return _delta(i, b) * _delta(j, a + 1) - _delta(i, b - 1) * _delta(j, a)


def darboux_structure(k: int) -> PoissonStructure:
    """{E_i^j, E_a^b}_0 = d_{ib} d_{j,a+1} - d_{i,b-1} d_{ja}."""
    cs = coords(k)
    return PoissonStructure(
        k, {(p, q): _darboux_value(*p, *q) for p in cs for q in cs if p < q}
    )


def _t_matrix(k: int):
    """T[alpha][beta] = dE_alpha / dC_beta."""
    cs = coords(k)
    return [[_delta(b, i) * _delta(a + 1, j) - _delta(b - 1, i) * _delta(a, j) for (i, j) in cs] for (a, b) in cs]


class RecursionOperator:
    """J_x or J_y as an m x m polynomial matrix in the E-basis.

    Column beta holds the components of J(d/dE_beta) along d/dE_alpha.
    """

    __slots__ = ("k", "axis", "matrix")

    def __init__(self, k: int, axis: str, matrix: PolyMatrix):
        self.k = k
        self.axis = axis
        self.matrix = matrix

    def action(self, a, b) -> dict:
        """J(d/dE_a^b) as {(i, j): coefficient}."""
        cs = coords(self.k)
        col = cs.index((a, b))
        return {c: self.matrix[r, col] for r, c in enumerate(cs) if not self.matrix[r, col].is_zero()}

    def is_linear(self) -> bool:
        return all(v.is_homogeneous(1) for r in self.matrix.entries for v in r)

    def evaluate(self, E: ChartPoint):
        return self.matrix.evaluate(E.as_dict())

    def __repr__(self):
        return f"RecursionOperator(k={self.k}, axis={self.axis!r})"


_RECURSION_CACHE: dict = {}


def recursion_operator(k: int, axis: str) -> RecursionOperator:
    """The recursion operator in the E-basis.

    On the Haiman basis it reads
        J_y(d/dC_i^j) = sum_b E_i^b d/dE_j^b - sum_a E_a^j d/dE_a^i,
        J_x(d/dC_i^j) = sum_b E_i^b d/dE_{j-1}^b - sum_a E_a^j d/dE_a^{i+1},
    dropping out-of-range targets; then d/dC = T d/dE is inverted.
    """
    if axis not in ("x", "y"):
        raise ValueError("axis must be 'x' or 'y'")
    key = (k, axis)
    if key in _RECURSION_CACHE:
        return _RECURSION_CACHE[key]
    cs = coords(k)
    idx = {c: n for n, c in enumerate(cs)}
    ring = chart_ring(k)
    m = len(cs)
    K = [[ring.zero() for _ in range(m)] for _ in range(m)]
    for (i, j) in cs:
        col = idx[(i, j)]
        for b in range(k + 1):
            tgt = (j - 1, b) if axis == "x" else (j, b)
            if tgt in idx:
                K[idx[tgt]][col] = K[idx[tgt]][col] + ring.gen(var_name(i, b))
        for a in range(k):
            tgt = (a, i + 1) if axis == "x" else (a, i)
            if tgt in idx:
                K[idx[tgt]][col] = K[idx[tgt]][col] - ring.gen(var_name(a, j))
    Tinv = linalg.inverse(_t_matrix(k))
    J = PolyMatrix(K, ring, m).matmul(PolyMatrix(Tinv, ring, m))
    op = RecursionOperator(k, axis, J)
    _RECURSION_CACHE[key] = op
    return op


def structure_from_f(k: int, f) -> PoissonStructure:
    """pi = f(J_x, J_y) pi_0, i.e. P[a][b] = sum_c P0[a][c] F[b][c]."""
    from .exactalg.parse import parse_poly

    if isinstance(f, str):
        f = parse_poly(f)
    elif not isinstance(f, Poly):
        f = poly_ring(["x", "y"]).const(f)
    extra = f.variables() - {"x", "y"}
    if extra:
        raise ValueError(f"f must be a polynomial in x, y; found {sorted(extra)}")
    ring = chart_ring(k)
    m = k * (k + 1)
    Jx = recursion_operator(k, "x").matrix
    Jy = recursion_operator(k, "y").matrix
    if not (Jx.matmul(Jy) == Jy.matmul(Jx)):
        raise AssertionError("recursion operators do not commute")
    px, py = {0: PolyMatrix.identity(m, ring)}, {0: PolyMatrix.identity(m, ring)}

    def power(cache, base, n):
        if n not in cache:
            cache[n] = power(cache, base, n - 1).matmul(base)
        return cache[n]

    F = PolyMatrix.zeros(m, m, ring)
    for exps, c in f.items():
        term = power(px, Jx, exps.get("x", 0)).matmul(power(py, Jy, exps.get("y", 0)))
        F = F + term * c
    P0 = darboux_structure(k).matrix()
    table = [[ring.zero()] * m for _ in range(m)]
    for r in range(m):
        for s in range(m):
            acc = ring.zero()
            for t in range(m):
                if not P0[r][t].is_zero() and not F[s, t].is_zero():
                    acc = acc + F[s, t] * P0[r][t]
            table[r][s] = acc
    return PoissonStructure.from_matrix(k, table)


def aff_structure(k: int) -> PoissonStructure:
    """{E_i^j, E_a^b} = d_{aj} E_i^b - d_{bi} E_a^j."""
    ring = chart_ring(k)
    cs = coords(k)
    valid = set(cs)

    def E(i, j):
        return ring.gen(var_name(i, j)) if (i, j) in valid else ring.zero()

    entries = {}
    for p in cs:
        for q in cs:
            if p < q:
                (i, j), (a, b) = p, q
                entries[(p, q)] = E(i, b) * _delta(a, j) - E(a, j) * _delta(b, i)
    return PoissonStructure(k, entries)


def quad_nodal_structure(k: int) -> PoissonStructure:
    """The quadratic bracket for f = xy, as an eight-sum closed form.

    Out-of-range E's are zero.
    """
    ring = chart_ring(k)
    cs = coords(k)
    valid = set(cs)
    zero = ring.zero()
    gens = {c: ring.gen(var_name(*c)) for c in valid}

    def e(i, j):
        return gens.get((i, j), zero)

    def value(i, j, a, b):
        s = zero
        if a >= j:
            for p in range(0, a + 1):
                s = s + e(i, p + j - a) * e(p, b)
        for p in range(i, a + 1):
            s = s - e(a + i - p, j) * e(p, b)
        if a + 1 <= j:
            for p in range(a + 1, k):
                s = s - e(i, p + j - a) * e(p, b)
        for p in range(a + 1, i):
            s = s + e(a + i - p, j) * e(p, b)
        for q in range(0, min(j, b - 1) + 1):
            s = s + e(i, b + j - q) * e(a, q)
        if b <= i:
            for q in range(0, b):
                s = s - e(q + i - b, j) * e(a, q)
        for q in range(max(j + 1, b), k + 1):
            s = s - e(i, b + j - q) * e(a, q)
        if b - 1 >= i:
            for q in range(b, k + 1):
                s = s + e(q + i - b, j) * e(a, q)
        return s

    table = [[value(*p, *q) for q in cs] for p in cs]
    return PoissonStructure.from_matrix(k, table)


# -- brackets of functions and the Jacobi identity ----------------------------


def bracket(pi: PoissonStructure, F, G) -> Poly:
    """{F, G} = sum pi^{ab} d_a F d_b G."""
    ring = pi.ring
    F = F.to_ring(ring.union(F.ring)) if isinstance(F, Poly) else ring.const(F)
    G = G.to_ring(ring.union(G.ring)) if isinstance(G, Poly) else ring.const(G)
    cs = coords(pi.k)
    dF = {c: F.diff(var_name(*c)) for c in cs}
    dG = {c: G.diff(var_name(*c)) for c in cs}
    total = ring.zero()
    for a, b, p in pi.items():
        if not dF[a].is_zero() and not dG[b].is_zero():
            total = total + p * dF[a] * dG[b]
        if not dF[b].is_zero() and not dG[a].is_zero():
            total = total - p * dF[b] * dG[a]
    return total


def _cyclic_sums(args):
    k, entries, triples = args
    pi = PoissonStructure(k, entries)
    cs = coords(k)
    derivs = {}

    def d(a, b, c):
        key = (a, b, c)
        if key not in derivs:
            derivs[key] = pi.entry(a, b).diff(var_name(*c))
        return derivs[key]

    out = []
    for a, b, c in triples:
        total = pi.ring.zero()
        for u, v, w in ((a, b, c), (b, c, a), (c, a, b)):
            # {E_u, {E_v, E_w}} = sum_t pi_{ut} d_t pi_{vw}
            for t in cs:
                p = pi.entry(u, t)
                if p.is_zero():
                    continue
                q = d(v, w, t)
                if not q.is_zero():
                    total = total + p * q
        if not total.is_zero():
            out.append(((a, b, c), total))
    return out


def resolve_jobs(jobs: int | None) -> int:
    if jobs is None:
        env = os.environ.get("HILB_JOBS")
        jobs = int(env) if env else 1
    return max(1, int(jobs))


def jacobi_defect(pi: PoissonStructure, jobs: int | None = None) -> list:
    """Every coordinate triple whose Jacobi cyclic sum is nonzero."""
    jobs = resolve_jobs(jobs)
    cs = coords(pi.k)
    triples = list(itertools.combinations(cs, 3))
    entries = {(a, b): p for a, b, p in pi.items()}
    if jobs == 1 or len(triples) < 64:
        return _cyclic_sums((pi.k, entries, triples))
    chunks = [triples[n::jobs] for n in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(_cyclic_sums, [(pi.k, entries, ch) for ch in chunks]))
    order = {t: n for n, t in enumerate(triples)}
    merged = [item for part in parts for item in part]
    merged.sort(key=lambda item: order[item[0]])
    return merged


# -- the affine group action ----------------------------------------------------


def coadjoint_action(g, v, E: ChartPoint) -> ChartPoint:
    """(g, v) . E = psi(g, v) E g^{-1} with psi(g, v) = [[g, v], [0, 1]]."""
    k = E.k
    g = linalg.to_fractions(g)
    v = [Fraction(t) for t in v]
    if len(g) != k or any(len(r) != k for r in g) or len(v) != k:
        raise ShapeError(f"need a {k}x{k} matrix g and a length-{k} vector v")
    ginv = linalg.inverse(g)
    psi = [list(g[r]) + [v[r]] for r in range(k)] + [[Fraction(0)] * k + [Fraction(1)]]
    if E.is_symbolic():
        Em = PolyMatrix(E.tolist())
        out = PolyMatrix(psi, Em.ring).matmul(Em).matmul(PolyMatrix(ginv, Em.ring))
        return ChartPoint(k, out.tolist())
    out = linalg.matmul(linalg.matmul(psi, [list(r) for r in E.values]), ginv)
    return ChartPoint(k, out)


def hamiltonian_vector_field(pi: PoissonStructure, h: Poly) -> dict:
    """{h, E_alpha} for every coordinate alpha."""
    ring = pi.ring
    return {c: bracket(pi, h, ring.gen(var_name(*c))) for c in coords(pi.k)}


# -- the symplectic form from multiplication matrices ----------------------------


def _haiman_symbol(k, j, a, b) -> str:
    """Name of c^j_{ab}; the top-degree ones are the Haiman coordinates C_a^j."""
    if a + b == k - 1:
        return var_name(a, j, "C")
    return f"c[{j}][{a}][{b}]"


def multiplication_matrices_symbolic(k: int):
    """M_x, M_y on the staircase {x^a y^b : a + b < k} with symbolic c^j_{ab}."""
    basis = [(a, d - a) for d in range(k) for a in range(d + 1)]
    pos = {m: n for n, m in enumerate(basis)}
    names = [_haiman_symbol(k, j, a, b) for j in range(k + 1) for (a, b) in basis]
    ring = poly_ring(names)
    n = len(basis)

    def build(shift):
        M = [[ring.zero()] * n for _ in range(n)]
        for col, (a, b) in enumerate(basis):
            a2, b2 = a + shift[0], b + shift[1]
            if (a2, b2) in pos:
                M[pos[(a2, b2)]][col] = ring.one()
            else:
                j = a2  # x^j y^(k-j) with j = a2
                for row, (p, q) in enumerate(basis):
                    M[row][col] = ring.gen(_haiman_symbol(k, j, p, q))
        return PolyMatrix(M, ring, n)

    return build((1, 0)), build((0, 1))


def mult_matrix_symplectic_form(k: int, C: ChartPoint | None = None) -> TwoForm:
    """Tr(dM_y ^ dM_x); checked against sum_{i,a} dC_a^i ^ dC_i^{a+1}."""
    if C is not None and (C.k != k or not C.is_symbolic()):
        raise ValueError("expected symbolic Haiman coordinates of size k")
    Mx, My = multiplication_matrices_symbolic(k)
    omega = trace_d_wedge_d(My, Mx)
    expected = TwoForm()
    for i in range(k):
        for a in range(k):
            expected = expected + TwoForm.wedge(var_name(a, i, "C"), var_name(i, a + 1, "C"))
    if omega != expected:
        raise AssertionError("Tr(dM_y ^ dM_x) differs from the Haiman Darboux form")
    return omega


def darboux_form_mixed(k: int) -> TwoForm:
    """sum over j <= i of dC_i^j ^ dE_i^j, pulled back to the C coordinates."""
    Csym = symbolic_chart(k, "C")
    E_of_C = haiman_to_es(Csym)
    form = TwoForm()
    for i, j in coords(k):
        if j <= i:
            form = form + TwoForm.wedge(var_name(i, j, "C"), var_name(i, j, "E"))
    return form.pullback({var_name(i, j): E_of_C[i, j] for i, j in coords(k)})
