"""Dense linear algebra over Q on lists of lists of Fractions."""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "SingularMatrix",
    "to_fractions",
    "identity",
    "zeros",
    "matmul",
    "transpose",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "inverse",
    "det",
    "in_rowspan",
]


class SingularMatrix(ValueError):
    pass


def to_fractions(rows):
    return [[Fraction(v) for v in row] for row in rows]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r, c):
    return [[Fraction(0)] * c for _ in range(r)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def rref(a, ncols=None):
    """Reduced row echelon form.  Returns (matrix, pivot column list)."""
    m = [list(map(Fraction, row)) for row in a]
    if not m:
        return m, []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [u - f * v for u, v in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(a) -> int:
    return len(rref(a)[1])


def nullspace(a, ncols=None):
    """Basis of {v : a v = 0}, one vector per free column."""
    if not a:
        n = ncols or 0
        return identity(n)
    n = len(a[0])
    m, pivots = rref(a)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(m, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(a, b):
    """One solution x of a x = b (free variables set to 0), or None."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [Fraction(rhs)] for row, rhs in zip(a, b)]
    m, pivots = rref(aug, ncols=n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(m, pivots):
        x[pc] = row[n]
    return x


def inverse(a):
    n = len(a)
    aug = [list(map(Fraction, row)) + e for row, e in zip(a, identity(n))]
    m, pivots = rref(aug, ncols=n)
    if pivots != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return [row[n:] for row in m]


def det(a) -> Fraction:
    m = [list(map(Fraction, row)) for row in a]
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        result *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [u - f * v for u, v in zip(m[i], m[c])]
    return result


def in_rowspan(a, v) -> bool:
    """Whether v lies in the row span of a (exact rank comparison)."""
    return rank(list(a) + [list(v)]) == rank(a)
