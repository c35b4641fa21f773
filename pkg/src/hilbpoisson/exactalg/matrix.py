"""Matrices of polynomials."""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly, PolyRing, poly_ring

__all__ = ["ShapeError", "PolyMatrix", "signed_maximal_minors"]


class ShapeError(ValueError):
    pass


class PolyMatrix:
    """An immutable rectangular matrix whose entries share one ring."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, entries, ring: PolyRing | None = None, cols: int | None = None):
        rows = [list(r) for r in entries]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ShapeError("rows of unequal length")
        if ring is None:
            names = set()
            for r in rows:
                for v in r:
                    if isinstance(v, Poly):
                        names |= set(v.ring.names)
            ring = poly_ring(names)
        self.ring = ring
        self.rows = len(rows)
        self.cols = cols
        self.entries = tuple(
            tuple(v.to_ring(ring) if isinstance(v, Poly) else ring.const(v) for v in r)
            for r in rows
        )

    @classmethod
    def zeros(cls, rows, cols, ring):
        return cls([[ring.zero()] * cols for _ in range(rows)], ring, cols)

    @classmethod
    def identity(cls, n, ring):
        return cls([[ring.const(int(i == j)) for j in range(n)] for i in range(n)], ring, n)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def col(self, j):
        return tuple(r[j] for r in self.entries)

    def tolist(self):
        return [list(r) for r in self.entries]

    def to_ring(self, ring):
        return PolyMatrix(self.entries, ring, self.cols)

    def _unify(self, other):
        if other.ring is self.ring:
            return self, other
        ring = self.ring.union(other.ring)
        return self.to_ring(ring), other.to_ring(ring)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return all(a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb))

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __add__(self, other):
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        a, b = self._unify(other)
        return PolyMatrix(
            [[u + v for u, v in zip(ra, rb)] for ra, rb in zip(a.entries, b.entries)], a.ring, a.cols
        )

    def __neg__(self):
        return self.map(lambda p: -p)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            return self.matmul(other)
        if isinstance(other, Poly):
            a = self.to_ring(self.ring.union(other.ring))
            return a.map(lambda p: p * other)
        return self.map(lambda p: p * other)

    def __rmul__(self, other):
        if isinstance(other, PolyMatrix):
            return other.matmul(self)
        return self * other

    def __matmul__(self, other):
        return self.matmul(other)

    def matmul(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        a, b = self._unify(other)
        zero = a.ring.zero()
        out = []
        bcols = [b.col(j) for j in range(b.cols)]
        for r in a.entries:
            row = []
            for c in bcols:
                s = zero
                for u, v in zip(r, c):
                    if u.terms and v.terms:
                        s = s + u * v
                row.append(s)
            out.append(row)
        return PolyMatrix(out, a.ring, b.cols)

    def map(self, fn) -> "PolyMatrix":
        out = [[fn(v) for v in r] for r in self.entries]
        names = set(self.ring.names)
        for r in out:
            for v in r:
                if isinstance(v, Poly):
                    names |= v.variables()
        ring = self.ring if names <= set(self.ring.names) else poly_ring(names)
        return PolyMatrix(out, ring, self.cols)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([list(self.col(j)) for j in range(self.cols)], self.ring, self.rows)

    @property
    def T(self):
        return self.transpose()

    def delete_row(self, i) -> "PolyMatrix":
        return PolyMatrix([r for k, r in enumerate(self.entries) if k != i], self.ring, self.cols)

    def delete_col(self, j) -> "PolyMatrix":
        return PolyMatrix([[v for k, v in enumerate(r) if k != j] for r in self.entries], self.ring, self.cols - 1)

    def submatrix(self, rows, cols) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for j in cols] for i in rows], self.ring, len(cols))

    def subs(self, mapping, ring=None) -> "PolyMatrix":
        return PolyMatrix([[v.subs(mapping, ring) for v in r] for r in self.entries], ring)

    def evaluate(self, values) -> list[list[Fraction]]:
        return [[v.evaluate(values) for v in r] for r in self.entries]

    def diff(self, name) -> "PolyMatrix":
        return PolyMatrix([[v.diff(name) for v in r] for r in self.entries], self.ring, self.cols)

    def trace(self) -> Poly:
        if self.rows != self.cols:
            raise ShapeError("trace of a non-square matrix")
        s = self.ring.zero()
        for i in range(self.rows):
            s = s + self.entries[i][i]
        return s

    def is_zero(self) -> bool:
        return all(v.is_zero() for r in self.entries for v in r)

    def det(self) -> Poly:
        """Division-free determinant by expansion over column prefixes."""
        if self.rows != self.cols:
            raise ShapeError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return self.ring.one()
        a = self.entries
        # minors[mask] = det of rows in mask against the first popcount(mask) columns
        minors = {0: self.ring.one()}
        for c in range(n):
            nxt = {}
            for mask, val in minors.items():
                if val.is_zero():
                    continue
                for r in range(n):
                    bit = 1 << r
                    if mask & bit:
                        continue
                    entry = a[r][c]
                    if entry.is_zero():
                        continue
                    # sign: one transposition per used row with index above r
                    below = bin(mask >> (r + 1)).count("1")
                    term = val * entry
                    if below % 2:
                        term = -term
                    key = mask | bit
                    nxt[key] = nxt[key] + term if key in nxt else term
            minors = nxt
        return minors.get((1 << n) - 1, self.ring.zero())

    def power(self, n: int) -> "PolyMatrix":
        if self.rows != self.cols:
            raise ShapeError("power of a non-square matrix")
        result = PolyMatrix.identity(self.rows, self.ring)
        base = self
        while n:
            if n & 1:
                result = result.matmul(base)
            n >>= 1
            if n:
                base = base.matmul(base)
        return result

    def __repr__(self):
        return "PolyMatrix(" + repr([[str(v) for v in r] for r in self.entries]) + ")"

    def to_strings(self):
        return [[str(v) for v in r] for r in self.entries]


def signed_maximal_minors(S: PolyMatrix) -> list[Poly]:
    """(det S_0, -det S_1, ..., (-1)^k det S_k) for a (k+1) x k matrix S."""
    if S.rows != S.cols + 1 or S.cols < 1:
        raise ShapeError(f"expected a (k+1) x k matrix with k >= 1, got {S.shape}")
    out = []
    for j in range(S.rows):
        d = S.delete_row(j).det()
        out.append(-d if j % 2 else d)
    return out
