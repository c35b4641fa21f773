"""The triangular chart of the Hilbert scheme of k(k+1)/2 points.

A chart point is a (k+1) x k matrix.  Throughout, E_i^j is the entry in
row j (0..k) and column i (0..k-1), so ``values[j][i]`` holds E_i^j, and
the polynomial variable for it is named ``E[i][j]``.  Haiman coordinates
C_i^j use the same layout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactalg.matrix import PolyMatrix, ShapeError, signed_maximal_minors
from .exactalg.poly import Poly, PolyRing, as_fraction, poly_ring
from .ideals import XY, GroebnerBasis, groebner

__all__ = [
    "CoordIndex",
    "ChartPoint",
    "coords",
    "var_name",
    "chart_ring",
    "symbolic_chart",
    "es_to_haiman",
    "haiman_to_es",
    "syzygy_matrix",
    "hilbert_burch_ideal",
    "haiman_generators",
    "haiman_from_ideal",
    "MissingCoefficient",
]


class MissingCoefficient(KeyError):
    pass


@dataclass(frozen=True, order=True)
class CoordIndex:
    """E_i^j: column i in 0..k-1, row j in 0..k."""

    i: int
    j: int
    k: int

    def __post_init__(self):
        if not (0 <= self.i < self.k and 0 <= self.j <= self.k):
            raise IndexError(f"({self.i},{self.j}) out of range for k={self.k}")


def coords(k: int) -> list[tuple[int, int]]:
    """All (i, j) index pairs, i the column and j the row."""
    return [(i, j) for i in range(k) for j in range(k + 1)]


def var_name(i: int, j: int, letter: str = "E") -> str:
    return f"{letter}[{i}][{j}]"


def chart_ring(k: int, letter: str = "E", with_xy: bool = False) -> PolyRing:
    names = [var_name(i, j, letter) for i, j in coords(k)]
    if with_xy:
        names = ["x", "y"] + names
    return poly_ring(names)


class ChartPoint:
    """A (k+1) x k matrix of rationals or polynomials."""

    __slots__ = ("k", "values")

    def __init__(self, k: int, values):
        rows = [list(r) for r in values]
        if len(rows) != k + 1 or any(len(r) != k for r in rows):
            raise ShapeError(f"expected a {k + 1}x{k} matrix")
        self.k = k
        self.values = tuple(
            tuple(v if isinstance(v, Poly) else as_fraction(v) for v in r) for r in rows
        )

    @classmethod
    def from_matrix(cls, values):
        rows = [list(r) for r in values]
        if not rows:
            raise ShapeError("empty matrix")
        k = len(rows) - 1
        return cls(k, rows)

    @classmethod
    def zero(cls, k):
        return cls(k, [[0] * k for _ in range(k + 1)])

    def __getitem__(self, ij):
        """point[i, j] = entry at column i, row j."""
        i, j = ij
        return self.values[j][i]

    def get(self, i, j):
        """Entry at column i, row j, or 0 when out of range."""
        if 0 <= i < self.k and 0 <= j <= self.k:
            return self.values[j][i]
        return Fraction(0)

    def is_symbolic(self) -> bool:
        return any(isinstance(v, Poly) for r in self.values for v in r)

    def as_dict(self, letter: str = "E") -> dict:
        return {var_name(i, j, letter): self.values[j][i] for i, j in coords(self.k)}

    def tolist(self):
        return [list(r) for r in self.values]

    def __eq__(self, other):
        if not isinstance(other, ChartPoint):
            return NotImplemented
        return self.k == other.k and all(
            a == b for ra, rb in zip(self.values, other.values) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash((self.k, self.values))

    def __repr__(self):
        return f"ChartPoint({self.k}, {[[str(v) for v in r] for r in self.values]})"

    def scale(self, u) -> "ChartPoint":
        return ChartPoint(self.k, [[v * u for v in r] for r in self.values])


def symbolic_chart(k: int, letter: str = "E") -> ChartPoint:
    ring = chart_ring(k, letter)
    return ChartPoint(k, [[ring.gen(var_name(i, j, letter)) for i in range(k)] for j in range(k + 1)])


def es_to_haiman(E: ChartPoint) -> ChartPoint:
    """Haiman coordinates C_i^j as linear combinations of the E's."""
    k = E.k
    out = [[None] * k for _ in range(k + 1)]
    for i, j in coords(k):
        if j >= i + 1:
            # C_i^j = E^i_{j-1} + E^{i-1}_{j-2} + ... + E^0_{j-i-1}
            terms = [E.get(j - 1 - t, i - t) for t in range(i + 1)]
            sign = 1
        else:
            # C_i^j = -(E^{i+1}_j + E^{i+2}_{j+1} + ... + E^k_{j+k-i-1})
            terms = [E.get(j + t, i + 1 + t) for t in range(k - i)]
            sign = -1
        total = terms[0]
        for t in terms[1:]:
            total = total + t
        out[j][i] = total if sign > 0 else -total
    return ChartPoint(k, out)


def haiman_to_es(C: ChartPoint) -> ChartPoint:
    """E_i^j = C_j^{i+1} - C_{j-1}^i, out-of-range C's being zero."""
    k = C.k
    out = [[None] * k for _ in range(k + 1)]
    for i, j in coords(k):
        out[j][i] = C.get(j, i + 1) - C.get(j - 1, i)
    return ChartPoint(k, out)


def syzygy_matrix(k: int, E: ChartPoint | None = None) -> PolyMatrix:
    """S_E(x, y) = E - x (I over 0) + y (0 over I); symbolic E when None."""
    if E is None:
        E = symbolic_chart(k)
    if E.k != k:
        raise ShapeError(f"chart point has k={E.k}, expected {k}")
    ring = XY
    if E.is_symbolic():
        names = {"x", "y"}
        for r in E.values:
            for v in r:
                if isinstance(v, Poly):
                    names |= set(v.ring.names)
        ring = poly_ring(names)
    x, y = ring.gen("x"), ring.gen("y")
    rows = []
    for j in range(k + 1):
        row = []
        for i in range(k):
            v = E.values[j][i]
            entry = v.to_ring(ring) if isinstance(v, Poly) else ring.const(v)
            if j == i:
                entry = entry - x
            if j == i + 1:
                entry = entry + y
            row.append(entry)
        rows.append(row)
    return PolyMatrix(rows, ring, k)


def hilbert_burch_ideal(k: int, E: ChartPoint, order: str = "degrevlex") -> GroebnerBasis:
    if E.is_symbolic():
        raise ValueError("hilbert_burch_ideal needs a rational chart point")
    return groebner(signed_maximal_minors(syzygy_matrix(k, E)), order)


def haiman_generators(k: int, C) -> list[Poly]:
    """f_j = x^j y^(k-j) - sum c^j_{ab} x^a y^b for j = 0..k.

    ``C`` is either a ChartPoint holding the leading block C_i^j = c^j_{i,k-1-i},
    or a dict {(j, a, b): value} of all the coefficients to use.
    """
    x, y = XY.gens()
    if isinstance(C, ChartPoint):
        if C.k != k:
            raise ShapeError(f"chart point has k={C.k}, expected {k}")
        coeffs = {(j, i, k - 1 - i): C.values[j][i] for i, j in coords(k)}
    else:
        coeffs = dict(C)
        missing = [(j, i, k - 1 - i) for i, j in coords(k) if (j, i, k - 1 - i) not in coeffs]
        if missing:
            raise MissingCoefficient(f"missing leading coefficients {missing}")
    out = []
    for j in range(k + 1):
        f = x**j * y ** (k - j)
        for (jj, a, b), c in sorted(coeffs.items()):
            if jj == j:
                if isinstance(c, Poly):
                    raise ValueError("haiman_generators needs rational coefficients")
                f = f - x**a * y**b * c
        out.append(f)
    return out


def haiman_from_ideal(k: int, E: ChartPoint) -> ChartPoint:
    """Top-degree Haiman coordinates read off from normal forms.

    C_i^j is the coefficient of x^i y^(k-1-i) in the degrevlex normal form
    of x^j y^(k-j) modulo the ideal of the chart point.
    """
    G = hilbert_burch_ideal(k, E, "degrevlex")
    x, y = XY.gens()
    out = [[None] * k for _ in range(k + 1)]
    for j in range(k + 1):
        nf = G.normal_form(x**j * y ** (k - j))
        for i in range(k):
            out[j][i] = nf.coefficient({"x": i, "y": k - 1 - i})
    return ChartPoint(k, out)
