"""Cyclically monotone matrices, interval overlap matrices and their realization.

A skew m x m matrix b is cyclically monotone if, after possibly negating
all entries, every row a satisfies

    b[a][a+1] >= b[a][a+2] >= ... >= b[a][m-1] >= b[a][0] >= ... >= b[a][a-1].

Indices are 0-based throughout.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .brackets import resolve_jobs
from .exactalg import linalg
from .exactalg.poly import as_fraction

__all__ = [
    "CMMatrix",
    "IntervalTuple",
    "NotSkew",
    "RealizationFailure",
    "is_cyclically_monotone",
    "constant_in_rowspan",
    "interval_matrix",
    "realize_intervals",
    "enumerate_cm_01",
    "interval_exchange",
    "exchange_basis",
]


class NotSkew(ValueError):
    pass


class RealizationFailure(ValueError):
    pass


class CMMatrix:
    """A skew-symmetric integer matrix."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = tuple(tuple(int(v) for v in r) for r in entries)
        m = len(rows)
        if any(len(r) != m for r in rows):
            raise NotSkew("matrix is not square")
        for a in range(m):
            for b in range(m):
                if rows[a][b] != -rows[b][a]:
                    raise NotSkew(f"entries ({a},{b}) and ({b},{a}) are not opposite")
        self.entries = rows

    @classmethod
    def from_upper(cls, m, upper):
        """Build from {(a, b): value} with a < b."""
        e = [[0] * m for _ in range(m)]
        for (a, b), v in upper.items():
            e[a][b] = v
            e[b][a] = -v
        return cls(e)

    @property
    def m(self) -> int:
        return len(self.entries)

    def __getitem__(self, ab):
        a, b = ab
        return self.entries[a][b]

    def tolist(self):
        return [list(r) for r in self.entries]

    def is_01_upper(self) -> bool:
        return all(self.entries[a][b] in (0, 1) for a in range(self.m) for b in range(a + 1, self.m))

    def permuted(self, perm) -> "CMMatrix":
        """The matrix with new index p taking old index perm[p]."""
        return CMMatrix([[self.entries[perm[a]][perm[b]] for b in range(self.m)] for a in range(self.m)])

    def __eq__(self, other):
        if isinstance(other, CMMatrix):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"CMMatrix({self.tolist()})"


def _as_cm(B) -> CMMatrix:
    if isinstance(B, CMMatrix):
        return B
    if hasattr(B, "entries") and not isinstance(B, (list, tuple)):
        return CMMatrix(B.entries)
    return CMMatrix(B)


def _row_ok(rows, a, sign) -> bool:
    m = len(rows)
    seq = [sign * rows[a][(a + t) % m] for t in range(1, m)]
    return all(x >= y for x, y in zip(seq, seq[1:]))


def is_cyclically_monotone(B) -> bool:
    B = _as_cm(B)
    rows = B.entries
    return any(all(_row_ok(rows, a, s) for a in range(B.m)) for s in (1, -1))


def constant_in_rowspan(B) -> bool:
    """True iff (1, ..., 1) lies in the row span of B (exact rank test)."""
    B = _as_cm(B)
    if B.m == 0:
        return True
    rows = linalg.to_fractions(B.tolist())
    return linalg.rank(rows + [[Fraction(1)] * B.m]) == linalg.rank(rows)


@dataclass(frozen=True)
class IntervalTuple:
    """Open intervals (c, d) with c < d and all 2m endpoints distinct."""

    intervals: tuple[tuple[Fraction, Fraction], ...]

    def __init__(self, intervals):
        ivs = tuple((as_fraction(c), as_fraction(d)) for c, d in intervals)
        for c, d in ivs:
            if not c < d:
                raise ValueError(f"empty interval ({c}, {d})")
        ends = [e for iv in ivs for e in iv]
        if len(set(ends)) != len(ends):
            raise ValueError("interval endpoints must be pairwise distinct")
        object.__setattr__(self, "intervals", ivs)

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __getitem__(self, i):
        return self.intervals[i]

    def lengths(self) -> tuple[Fraction, ...]:
        return tuple(d - c for c, d in self.intervals)

    def to_json(self):
        return [[str(c), str(d)] for c, d in self.intervals]


def interval_matrix(J) -> CMMatrix:
    """B(J): +1 where J_a overlaps J_b on the left, -1 on the right."""
    if not isinstance(J, IntervalTuple):
        J = IntervalTuple(J)
    m = len(J)
    e = [[0] * m for _ in range(m)]
    for a, (ca, da) in enumerate(J):
        for b, (cb, db) in enumerate(J):
            if ca < cb < da < db:
                e[a][b] = 1
            elif cb < ca < db < da:
                e[a][b] = -1
    return CMMatrix(e)


def _recipe(B: CMMatrix) -> IntervalTuple:
    m = B.m
    c = []
    for beta in range(m):
        ones = [a for a in range(beta) if B[a, beta] == 1]
        if beta == 0:
            c.append(Fraction(0))
        elif not ones:
            c.append(c[beta - 1] + Fraction(3, 2))
        else:
            kb = ones[0]
            lo = c[beta - 1]
            if kb >= 1:
                lo = max(lo, c[kb - 1] + 1)
            hi = c[kb] + 1
            if not lo < hi:
                raise RealizationFailure(f"no admissible left endpoint for interval {beta}")
            c.append((lo + hi) / 2)
    return IntervalTuple([(x, x + 1) for x in c])


def realize_intervals(B) -> IntervalTuple:
    """Unit intervals J with interval_matrix(J) = B.

    B must be cyclically monotone with 0/1 above the diagonal.  Left
    endpoints are midpoints of the ranges allowed by the inductive recipe.
    The matrix e_0 ^ e_{m-1} is monotone only after negation and defeats
    the recipe; it is realized by relabelling the last index as index 1.
    """
    B = _as_cm(B)
    if not B.is_01_upper():
        raise RealizationFailure("entries above the diagonal must be 0 or 1")
    if not is_cyclically_monotone(B):
        raise RealizationFailure("matrix is not cyclically monotone")
    try:
        J = _recipe(B)
    except RealizationFailure:
        m = B.m
        perm = [0, m - 1] + list(range(1, m - 1))
        Jp = _recipe(B.permuted(perm))
        ivs = [None] * m
        for new, old in enumerate(perm):
            ivs[old] = Jp[new]
        J = IntervalTuple(ivs)
    if interval_matrix(J) != B:
        raise RealizationFailure("constructed intervals do not reproduce B")
    return J


# -- enumeration --------------------------------------------------------------


def _extend(m, rows, a, signs, out):
    """Fill row a above the diagonal; rows < a are complete."""
    if a == m:
        out.append(CMMatrix(rows))
        return
    for bits in range(1 << (m - a - 1)):
        for t in range(m - a - 1):
            v = (bits >> t) & 1
            rows[a][a + 1 + t] = v
            rows[a + 1 + t][a] = -v
        ok = tuple(s for s in signs if _row_ok(rows, a, s))
        if ok:
            _extend(m, rows, a + 1, ok, out)
    for t in range(a + 1, m):
        rows[a][t] = 0
        rows[t][a] = 0


def _shard(m, first_bits):
    rows = [[0] * m for _ in range(m)]
    for t in range(m - 1):
        v = (first_bits >> t) & 1
        rows[0][1 + t] = v
        rows[1 + t][0] = -v
    out = []
    signs = tuple(s for s in (1, -1) if _row_ok(rows, 0, s))
    if signs:
        _extend(m, rows, 1, signs, out)
    return out


def _sort_key(B: CMMatrix):
    return tuple(B[a, b] for a in range(B.m) for b in range(a + 1, B.m))


def enumerate_cm_01(m: int, jobs=None) -> list[CMMatrix]:
    """All cyclically monotone skew m x m matrices with 0/1 above the diagonal.

    The search backtracks row by row, keeping the signs still possible.
    With jobs > 1 the first row's bit patterns are sharded over processes.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return [CMMatrix([[0]])]
    patterns = range(1 << (m - 1))
    n = resolve_jobs(jobs)
    if n > 1:
        with ProcessPoolExecutor(n) as pool:
            parts = list(pool.map(_shard, [m] * len(patterns), patterns))
    else:
        parts = [_shard(m, p) for p in patterns]
    out = [B for part in parts for B in part]
    out.sort(key=_sort_key)
    return out


# -- interval exchange ---------------------------------------------------------


def _exchange_map(cg, dg, cm, dm):
    def T(x):
        if cg <= x < cm:
            return x + (dm - cm)
        if cm <= x < dg:
            return x + (cg + dm - dg - cm)
        if dg <= x <= dm:
            return x - (dg - cg)
        return x

    return T


def interval_exchange(J, gamma: int, m: int | None = None) -> IntervalTuple:
    """Apply the exchange swapping the segments between J_gamma and J_m.

    The three segments [c_g, c_m], [c_m, d_g], [d_g, d_m] are laid back in
    the order third, second, first.  Indices gamma and m are removed.
    J must be sorted by left endpoint and gamma must be the largest index
    whose interval overlaps J_m on the left.
    """
    if not isinstance(J, IntervalTuple):
        J = IntervalTuple(J)
    if m is None:
        m = len(J) - 1
    lefts = [c for c, _ in J]
    if lefts != sorted(lefts):
        raise ValueError("intervals must be sorted by left endpoint")
    if m != len(J) - 1:
        raise ValueError("m must be the last index")
    B = interval_matrix(J)
    over = [a for a in range(m) if B[a, m] == 1]
    if not over or gamma != over[-1]:
        raise ValueError("gamma must be the largest index overlapping J_m on the left")
    (cg, dg), (cm, dm) = J[gamma], J[m]
    T = _exchange_map(cg, dg, cm, dm)
    return IntervalTuple([(T(c), T(d)) for a, (c, d) in enumerate(J) if a not in (gamma, m)])


def exchange_basis(B: CMMatrix, gamma: int, m: int):
    """Columns of the new basis vectors e~_a in the standard basis, as a matrix P.

    e~_gamma = e_gamma - sum B[m][b] e_b and e~_m = e_m + sum B[gamma][b] e_b,
    the sums over b other than gamma and m; other vectors are unchanged.
    """
    n = B.m
    P = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    for b in range(n):
        if b not in (gamma, m):
            P[b][gamma] -= B[m, b]
            P[b][m] += B[gamma, b]
    return P
