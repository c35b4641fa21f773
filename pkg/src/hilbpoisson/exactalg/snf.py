"""Smith normal form over the local ring Q[x]_(x).

Units of the local ring are series with nonzero constant term, so only the
x-adic valuations of the invariant factors matter.  We eliminate on
truncated power series modulo x^N, always pivoting on an entry of minimal
valuation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .matrix import PolyMatrix

__all__ = ["PrecisionExhausted", "SnfResult", "snf_dvr", "generic_rank"]


class PrecisionExhausted(ArithmeticError):
    """The working precision is too small to see every invariant factor."""


@dataclass(frozen=True)
class SnfResult:
    valuations: tuple[int, ...]
    truncation: int


def _univariate(S: PolyMatrix, var: str):
    """Entries as coefficient lists in ``var``; other variables are rejected."""
    out = []
    for row in S.entries:
        new = []
        for p in row:
            extra = p.variables() - {var}
            if extra:
                raise ValueError(f"entries must only involve {var}, found {sorted(extra)}")
            coeffs = {}
            for exps, c in p.items():
                coeffs[exps.get(var, 0)] = c
            new.append(coeffs)
        out.append(new)
    return out


def generic_rank(S: PolyMatrix, var: str = "x") -> int:
    """Rank over Q(x), from evaluations at enough distinct points."""
    entries = _univariate(S, var)
    if not entries or not S.cols:
        return 0
    degree_bound = sum(
        max((max(e, default=0) for e in (entries[i][j] for i in range(S.rows))), default=0)
        for j in range(S.cols)
    )
    best = 0
    for t in range(degree_bound + 1):
        point = Fraction(t)
        m = [[sum(c * point**e for e, c in entry.items()) for entry in row] for row in entries]
        best = max(best, linalg.rank(m))
        if best == min(S.rows, S.cols):
            break
    return best


def _valuation(s, n):
    for i in range(n):
        if s[i]:
            return i
    return n


def _series_div(num, den, n):
    """num / den modulo x^n, den a unit."""
    inv0 = 1 / den[0]
    q = [Fraction(0)] * n
    rem = list(num)
    for i in range(n):
        c = rem[i] * inv0
        q[i] = c
        if c:
            for j in range(i, n):
                if j - i < len(den):
                    rem[j] -= c * den[j - i]
    return q


def _series_mul(a, b, n):
    out = [Fraction(0)] * n
    for i, u in enumerate(a):
        if u:
            for j in range(n - i):
                if b[j]:
                    out[i + j] += u * b[j]
    return out


def snf_dvr(S: PolyMatrix, N: int | None = None, var: str = "x") -> SnfResult:
    """Valuations of the nonzero invariant factors of S over Q[x]_(x).

    Zero invariant factors (from rank deficiency over Q(x)) are not listed.
    Raises :class:`PrecisionExhausted` when some nonzero factor has valuation
    at least N.
    """
    if N is None:
        N = S.cols + 2
    if N < 1:
        raise ValueError("truncation must be at least 1")
    entries = _univariate(S, var)
    target = generic_rank(S, var)
    m = [
        [[entry.get(e, Fraction(0)) for e in range(N)] for entry in row]
        for row in entries
    ]
    rows, cols = S.rows, S.cols
    vals = []
    for t in range(min(rows, cols)):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = _valuation(m[i][j], N)
                if v < N and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        v, pi, pj = best
        m[t], m[pi] = m[pi], m[t]
        for row in m:
            row[t], row[pj] = row[pj], row[t]
        piv = m[t][t]
        unit = piv[v:] + [Fraction(0)] * v
        # clear column t below the pivot
        for i in range(t + 1, rows):
            a = m[i][t]
            if _valuation(a, N) >= N:
                continue
            q = _series_div(a[v:] + [Fraction(0)] * v, unit, N)
            for j in range(t, cols):
                prod = _series_mul(q, m[t][j], N)
                m[i][j] = [u - w for u, w in zip(m[i][j], prod)]
        # clear row t to the right of the pivot
        for j in range(t + 1, cols):
            a = m[t][j]
            if _valuation(a, N) >= N:
                continue
            q = _series_div(a[v:] + [Fraction(0)] * v, unit, N)
            for i in range(t, rows):
                prod = _series_mul(q, m[i][t], N)
                m[i][j] = [u - w for u, w in zip(m[i][j], prod)]
        vals.append(v)
    if len(vals) < target:
        raise PrecisionExhausted(
            f"only {len(vals)} of {target} invariant factors have valuation below {N}"
        )
    return SnfResult(tuple(sorted(vals)), N)
