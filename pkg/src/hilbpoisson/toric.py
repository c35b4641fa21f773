"""Torus weights of quadratic bivectors and the toric degeneration.

A weight is a (k+1) x k integer matrix indexed [row j][column i], matching
E_i^j.  The weight of c E^m d_alpha ^ d_beta is (exponents of m) - e_alpha -
e_beta.  The torus-invariant part pi_Delta of the quadratic bracket is
log symplectic; its biresidue matrix B, in the ordering by (i + j, i),
controls the smoothable weights: consecutive-row differences of B.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .brackets import PoissonStructure, quad_nodal_structure
from .charts import chart_ring, coords, var_name
from .exactalg import linalg
from .exactalg.poly import poly_ring

__all__ = [
    "WeightMatrix",
    "Domino",
    "Rectangular",
    "AdmissiblePair",
    "Smoothable",
    "Other",
    "SmoothableWeight",
    "BiresidueMatrix",
    "NotDecomposable",
    "NegativeCoefficient",
    "weight_of_term",
    "monomial_weights",
    "pi_coefficient",
    "pi_delta",
    "invariant_projection",
    "biresidue_ordering",
    "biresidue_entry",
    "biresidue_matrix",
    "pi_matrix",
    "inverse_relation_check",
    "dominoes",
    "domino_decompositions",
    "is_rectangular",
    "admissible_pairs",
    "classify_weight",
    "smoothable_weights_by_type",
    "smoothable_basis",
    "decompose_weight",
    "find_coweight",
    "verify_degeneration",
]


# -- weights ---------------------------------------------------------------


class WeightMatrix:
    """A (k+1) x k integer matrix, entries[row][col]."""

    __slots__ = ("k", "entries")

    def __init__(self, k: int, entries):
        rows = tuple(tuple(int(v) for v in r) for r in entries)
        if len(rows) != k + 1 or any(len(r) != k for r in rows):
            raise ValueError(f"weight must be {k + 1}x{k}")
        self.k = k
        self.entries = rows

    @classmethod
    def zero(cls, k):
        return cls(k, [[0] * k for _ in range(k + 1)])

    @classmethod
    def from_positions(cls, k, plus=(), minus=()):
        """+1 at each (row, col) in plus, -1 at each in minus (with repeats)."""
        m = [[0] * k for _ in range(k + 1)]
        for r, c in plus:
            m[r][c] += 1
        for r, c in minus:
            m[r][c] -= 1
        return cls(k, m)

    @classmethod
    def from_vector(cls, k, vec):
        return cls(k, [vec[r * k:(r + 1) * k] for r in range(k + 1)])

    def vector(self) -> tuple[int, ...]:
        return tuple(v for r in self.entries for v in r)

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def support(self):
        return {(r, c): v for r, row in enumerate(self.entries) for c, v in enumerate(row) if v}

    def is_zero(self) -> bool:
        return not any(self.vector())

    def dot(self, other) -> int:
        return sum(a * b for a, b in zip(self.vector(), other.vector()))

    def __add__(self, other):
        return WeightMatrix(self.k, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return WeightMatrix(self.k, [[-a for a in r] for r in self.entries])

    def __mul__(self, c: int):
        return WeightMatrix(self.k, [[a * c for a in r] for r in self.entries])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, WeightMatrix):
            return NotImplemented
        return self.k == other.k and self.entries == other.entries

    def __hash__(self):
        return hash((self.k, self.entries))

    def __repr__(self):
        return f"WeightMatrix({self.k}, {[list(r) for r in self.entries]})"

    def to_json(self):
        return {"k": self.k, "entries": [list(r) for r in self.entries]}


def _position(coord):
    """Matrix position (row, col) of the coordinate (i, j) = E_i^j."""
    i, j = coord
    return (j, i)


def weight_of_term(k: int, monomial, pair) -> WeightMatrix:
    """Weight of E^monomial d_{pair[0]} ^ d_{pair[1]}.

    ``monomial`` lists coordinates (i, j) with repetition, or is a dict
    {(i, j): exponent}; ``pair`` is two coordinates.
    """
    valid = set(coords(k))
    if isinstance(monomial, dict):
        factors = [c for c, e in monomial.items() for _ in range(e)]
    else:
        factors = list(monomial)
    for c in list(factors) + list(pair):
        if tuple(c) not in valid:
            raise IndexError(f"coordinate {c} out of range for k={k}")
    return WeightMatrix.from_positions(
        k, plus=[_position(c) for c in factors], minus=[_position(c) for c in pair]
    )


def _parse_var(name: str):
    inner = name[2:-1].split("][")
    return (int(inner[0]), int(inner[1]))


def monomial_weights(pi: PoissonStructure):
    """(alpha, beta, monomial dict, coefficient, weight) for every term of pi."""
    out = []
    for a, b, p in pi.items():
        for exps, c in p.items():
            mono = {_parse_var(n): e for n, e in exps.items()}
            out.append((a, b, mono, c, weight_of_term(pi.k, mono, (a, b))))
    return out


# -- the toric part and its biresidues ---------------------------------------


def _ge(a, b) -> int:
    return 1 if a >= b else 0


def _d(a, b) -> int:
    return 1 if a == b else 0


def pi_coefficient(i, j, a, b) -> int:
    """Pi for the pair (E_i^j, E_a^b)."""
    return (
        _ge(a, j)
        - _ge(a, i)
        - _d(b, j) * _ge(a, i + 1)
        + _ge(b, j + 1) * _d(a, i)
        - _ge(b, j + 1)
        + _ge(b, i + 1)
    )


def pi_delta(k: int) -> PoissonStructure:
    """{E_alpha, E_beta}_Delta = Pi_{alpha beta} E_alpha E_beta."""
    ring = chart_ring(k)
    cs = coords(k)
    entries = {}
    for p in cs:
        for q in cs:
            if p < q:
                c = pi_coefficient(*p, *q)
                if c:
                    entries[(p, q)] = ring.gen(var_name(*p)) * ring.gen(var_name(*q)) * c
    return PoissonStructure(k, entries)


def invariant_projection(pi: PoissonStructure) -> PoissonStructure:
    """Keep exactly the monomials of zero torus weight.

    The input must be homogeneous (all monomials of one degree).
    """
    if len(pi.degrees()) > 1:
        raise ValueError("invariant_projection needs a homogeneous structure")
    ring = pi.ring
    entries = {}
    for a, b, mono, c, w in monomial_weights(pi):
        if w.is_zero():
            term = ring.const(c)
            for (i, j), e in mono.items():
                term = term * ring.gen(var_name(i, j)) ** e
            entries[(a, b)] = entries.get((a, b), ring.zero()) + term
    return PoissonStructure(pi.k, entries)


def biresidue_ordering(k: int) -> list[tuple[int, int]]:
    """Coordinates (i, j) sorted by i + j, ties broken by the column i."""
    return sorted(coords(k), key=lambda c: (c[0] + c[1], c[0]))


def _biresidue_formula(i, j, a, b) -> int:
    s, t = a + b, i + j
    return (
        -_d(s, t) * _ge(a, i + 1)
        - _d(s, t + 1) * _ge(i, a)
        + _d(s, t) * _ge(i - 1, a)
        + _d(s, t - 1) * _ge(a, i)
    )


def biresidue_entry(i, j, a, b) -> int:
    """Biresidue of the pair (E_i^j, E_a^b).

    The sign is fixed so that B[0][1] = 1 at k = 2; with it, Pi . B = -I.
    """
    return -_biresidue_formula(i, j, a, b)


@dataclass(frozen=True)
class BiresidueMatrix:
    k: int
    ordering: tuple[tuple[int, int], ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.ordering)

    def tolist(self):
        return [list(r) for r in self.entries]


def biresidue_matrix(k: int) -> BiresidueMatrix:
    order = biresidue_ordering(k)
    entries = tuple(tuple(biresidue_entry(*p, *q) for q in order) for p in order)
    return BiresidueMatrix(k, tuple(order), entries)


def pi_matrix(k: int) -> list[list[int]]:
    order = biresidue_ordering(k)
    return [[pi_coefficient(*p, *q) for q in order] for p in order]


def inverse_relation_check(k: int) -> Fraction:
    """The scalar c with Pi . B = c I; raises if the product is not scalar."""
    P = pi_matrix(k)
    B = biresidue_matrix(k).tolist()
    prod = linalg.matmul(linalg.to_fractions(P), linalg.to_fractions(B))
    c = prod[0][0]
    n = len(prod)
    for r in range(n):
        for s in range(n):
            if prod[r][s] != (c if r == s else 0):
                raise AssertionError(f"Pi.B is not scalar for k={k} (entry {r},{s})")
    return c


# -- dominoes and weight classes ----------------------------------------------


@dataclass(frozen=True)
class Domino:
    """+1 at head, -1 at tail, on one row or column; positions are (row, col)."""

    head: tuple[int, int]
    tail: tuple[int, int]

    def __post_init__(self):
        if self.head == self.tail:
            raise ValueError("head and tail coincide")
        if self.head[0] != self.tail[0] and self.head[1] != self.tail[1]:
            raise ValueError("head and tail must share a row or a column")

    @property
    def orientation(self) -> str:
        (hr, hc), (tr, tc) = self.head, self.tail
        if hr == tr:
            return "E" if hc > tc else "W"
        return "S" if hr > tr else "N"

    @property
    def length(self) -> int:
        return abs(self.head[0] - self.tail[0]) + abs(self.head[1] - self.tail[1])

    @property
    def valuation(self) -> Fraction:
        if self.orientation in "NS":
            return Fraction(min(self.head[0], self.tail[0]))
        return Fraction(min(self.head[1], self.tail[1])) + Fraction(1, 2)

    def weight(self, k) -> WeightMatrix:
        return WeightMatrix.from_positions(k, plus=[self.head], minus=[self.tail])


@dataclass(frozen=True)
class Rectangular:
    top_left: tuple[int, int]
    bottom_right: tuple[int, int]


@dataclass(frozen=True)
class AdmissiblePair:
    first: Domino
    second: Domino


@dataclass(frozen=True)
class Smoothable:
    kind: str  # "I", "IIa", "IIb" or "corner"


@dataclass(frozen=True)
class Other:
    pass


def dominoes(k: int):
    """Every domino that fits in the (k+1) x k grid."""
    cells = [(r, c) for r in range(k + 1) for c in range(k)]
    for h in cells:
        for t in cells:
            if h != t and (h[0] == t[0] or h[1] == t[1]):
                yield Domino(h, t)


def _as_domino(W: WeightMatrix):
    sup = W.support()
    if len(sup) != 2 or sorted(sup.values()) != [-1, 1]:
        return None
    head = next(p for p, v in sup.items() if v == 1)
    tail = next(p for p, v in sup.items() if v == -1)
    if head[0] != tail[0] and head[1] != tail[1]:
        return None
    return Domino(head, tail)


def domino_decompositions(W: WeightMatrix):
    """All ordered pairs (d1, d2) of dominoes with d1 + d2 = W."""
    out = []
    for d1 in dominoes(W.k):
        d2 = _as_domino(W - d1.weight(W.k))
        if d2 is not None:
            out.append((d1, d2))
    return out


def is_rectangular(W: WeightMatrix):
    """The rectangle (top_left, bottom_right) if W = +TL - TR - BL + BR, else None."""
    sup = W.support()
    if len(sup) != 4:
        return None
    rows = sorted({r for r, _ in sup})
    cols = sorted({c for _, c in sup})
    if len(rows) != 2 or len(cols) != 2:
        return None
    (r1, r2), (c1, c2) = rows, cols
    expected = {(r1, c1): 1, (r1, c2): -1, (r2, c1): -1, (r2, c2): 1}
    if sup != expected:
        return None
    return Rectangular((r1, c1), (r2, c2))


def admissible_pairs(W: WeightMatrix):
    """Admissible ordered pairs (first, second) of dominoes summing to W."""
    out = []
    for d1, d2 in domino_decompositions(W):
        if (
            d1.length == d2.length
            and d1.orientation in "WS"
            and d2.orientation in "EN"
            and d1.valuation > d2.valuation
        ):
            out.append(AdmissiblePair(d1, d2))
    return out


def _smoothable_kind(W: WeightMatrix):
    k = W.k
    for kind, ws in smoothable_weights_by_type(k).items():
        if W in ws:
            return kind
    if W == _corner_weight(k):
        return "corner"
    return None


def classify_weight(W: WeightMatrix):
    """Smoothable(kind), Rectangular, AdmissiblePair or Other, in that precedence."""
    kind = _smoothable_kind(W)
    if kind is not None:
        return Smoothable(kind)
    rect = is_rectangular(W)
    if rect is not None:
        return rect
    pairs = admissible_pairs(W)
    if pairs:
        return pairs[0]
    return Other()


# -- smoothable weights ---------------------------------------------------------


def smoothable_weights_by_type(k: int) -> dict:
    """Type I, IIa and IIb weights generated from their definitions."""
    out = {"I": [], "IIa": [], "IIb": []}
    # I: unit squares, + at top-left and bottom-right
    for r in range(k):
        for c in range(k - 1):
            out["I"].append(
                WeightMatrix.from_positions(k, plus=[(r, c), (r + 1, c + 1)], minus=[(r, c + 1), (r + 1, c)])
            )
    # IIa: south domino in column 0 (tail row c+1) with east domino in row 0 (head col c+1)
    for c in range(k - 1):
        south = Domino((c + 2, 0), (c + 1, 0))
        east = Domino((0, c + 1), (0, c))
        out["IIa"].append(south.weight(k) + east.weight(k))
    # IIb: west domino in row k (head col r) with north domino in column k-1 (tail row r+1)
    for r in range(k - 1):
        west = Domino((k, r), (k, r + 1))
        north = Domino((r, k - 1), (r + 1, k - 1))
        out["IIb"].append(west.weight(k) + north.weight(k))
    return out


def _corner_weight(k: int) -> WeightMatrix:
    """-e at the top-right and bottom-left cells: the weight of the Darboux
    term d/dE_{k-1}^0 ^ d/dE_0^k."""
    return WeightMatrix.from_positions(k, minus=[(0, k - 1), (k, 0)])


class SmoothableWeight(WeightMatrix):
    """A consecutive-row difference of B, tagged with its type."""

    __slots__ = ("kind", "rows")

    def __init__(self, k, entries, kind, rows):
        super().__init__(k, entries)
        self.kind = kind
        self.rows = rows

    def __repr__(self):
        return f"SmoothableWeight({self.kind}, rows={self.rows}, {[list(r) for r in self.entries]})"


def _row_difference_weights(k: int):
    B = biresidue_matrix(k)
    order = B.ordering
    out = []
    for r in range(B.m - 1):
        diff = [B.entries[r + 1][s] - B.entries[r][s] for s in range(B.m)]
        m = [[0] * k for _ in range(k + 1)]
        for s, (i, j) in enumerate(order):
            m[j][i] = diff[s]
        out.append((r, WeightMatrix(k, m)))
    return out


_BASIS_CACHE: dict = {}


def smoothable_basis(k: int) -> list[SmoothableWeight]:
    """The consecutive-row differences B[r+1] - B[r], r = 0..m-2.

    They comprise every Type I, IIa and IIb weight plus one further weight,
    tagged "corner"; a ValueError is raised if a difference is of none of
    these kinds.
    """
    if k in _BASIS_CACHE:
        return list(_BASIS_CACHE[k])
    out = []
    for r, W in _row_difference_weights(k):
        kind = _smoothable_kind(W)
        if kind is None:
            raise ValueError(f"row difference {r} of B is not a smoothable weight: {W}")
        out.append(SmoothableWeight(k, W.entries, kind, (r, r + 1)))
    _BASIS_CACHE[k] = tuple(out)
    return out


class NotDecomposable(ValueError):
    pass


class NegativeCoefficient(ValueError):
    pass


def decompose_weight(W: WeightMatrix, k: int | None = None):
    """The unique expansion of W in smoothable_basis, as (weight, coefficient) pairs.

    Only nonzero coefficients are listed.  Raises NotDecomposable outside the
    span and NegativeCoefficient if a coefficient is negative or fractional.
    """
    k = W.k if k is None else k
    basis = smoothable_basis(k)
    # columns of A are basis vectors
    A = [[Fraction(s.vector()[p]) for s in basis] for p in range(k * (k + 1))]
    sol = linalg.solve(A, [Fraction(v) for v in W.vector()])
    if sol is None:
        raise NotDecomposable(f"{W} is not in the span of the smoothable weights")
    bad = [c for c in sol if c < 0 or c.denominator != 1]
    if bad:
        raise NegativeCoefficient(f"coefficients {sol} are not non-negative integers")
    return [(s, int(c)) for s, c in zip(basis, sol) if c]


def find_coweight(k: int) -> WeightMatrix:
    """Integer w with <w, s> a positive integer for every smoothable weight s."""
    basis = smoothable_basis(k)
    A = [[Fraction(v) for v in s.vector()] for s in basis]
    sol = linalg.solve(A, [Fraction(1)] * len(basis))
    if sol is None:
        raise AssertionError("smoothable weights are dependent")
    scale = lcm(*(c.denominator for c in sol)) if sol else 1
    w = WeightMatrix.from_vector(k, [int(c * scale) for c in sol])
    if any(w.dot(s) <= 0 for s in basis):
        raise AssertionError("coweight does not pair positively")
    return w


def verify_degeneration(k: int, w: WeightMatrix | None = None) -> dict:
    """Rescale E_alpha -> t^{w_alpha} E_alpha in the quadratic bracket.

    Every monomial term c E^m d_a ^ d_b then carries t^(<w, m> - w_a - w_b).
    Returns a summary with the minimal positive exponent; raises if some
    non-invariant term has exponent <= 0 or the t^0 part is not pi_Delta.
    """
    pi = quad_nodal_structure(k)
    if w is None:
        w = find_coweight(k)
    ring = chart_ring(k)
    tring = poly_ring(list(ring.names) + ["t"])
    t = tring.gen("t")
    # shift so every exponent is non-negative; <w, m> = tdeg - shift * deg(m)
    base = -min(min(w.vector()), 0)
    scaling = {var_name(i, j): t ** (w[j, i] + base) * tring.gen(var_name(i, j)) for i, j in coords(k)}
    exponents = []
    limit = {}
    invariant_terms = 0
    for a, b, p in pi.items():
        shift = w[a[1], a[0]] + w[b[1], b[0]]
        scaled = p.subs(scaling, tring)
        for exps, c in scaled.items():
            mono = {n: v for n, v in exps.items() if n != "t"}
            e = exps.get("t", 0) - base * sum(mono.values()) - shift
            if e == 0:
                invariant_terms += 1
                limit[(a, b)] = limit.get((a, b), ring.zero()) + ring.monomial(mono, c)
            else:
                exponents.append(e)
    if any(e < 0 for e in exponents):
        raise AssertionError(f"negative t-exponent {min(exponents)}")
    if PoissonStructure(k, limit) != pi_delta(k):
        raise AssertionError("the t -> 0 limit is not pi_Delta")
    report = {
        "k": k,
        "coweight": [list(r) for r in w.entries],
        "invariant_terms": invariant_terms,
        "noninvariant_terms": len(exponents),
        "min_positive_exponent": min(exponents) if exponents else None,
    }
    if not exponents:
        report["note"] = "degenerate case, limit immediate"
    return report
