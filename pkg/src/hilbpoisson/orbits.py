"""Orbit data at points of the triangular chart and related module computations.

At a chart point E the restriction S_E(x, 0) of the syzygy matrix has a
Smith form over Q[x] localized at x = 0; the positive valuations of its
invariant factors form the orbit datum.  The same diagram is the Jordan
type of x on the kernel of y acting on O/I near the origin.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .charts import ChartPoint, hilbert_burch_ideal, syzygy_matrix
from .exactalg import linalg
from .exactalg.matrix import PolyMatrix, ShapeError, signed_maximal_minors
from .exactalg.poly import Poly, as_fraction
from .exactalg.snf import PrecisionExhausted, snf_dvr
from .ideals import INFINITE, XY, GroebnerBasis, InfiniteColength, groebner, ideal_product, ideal_sum
from .young import YoungDiagram

__all__ = [
    "OrbitDatum",
    "NodalSeriesMatrix",
    "orbit_datum_smooth",
    "torsion_jordan_type",
    "jordan_type_at_zero",
    "perturbed_syzygy_ideal",
    "nodal_series_matrix",
    "hom_tangent_dim",
    "hom_space",
    "divisor_intersection_length",
    "char_poly",
    "nilcone_check",
]


@dataclass(frozen=True)
class OrbitDatum:
    diagram: YoungDiagram

    def __str__(self):
        return str(self.diagram)


def _restrict_y0(S: PolyMatrix) -> PolyMatrix:
    return S.subs({"y": XY.zero()})


def orbit_datum_smooth(k: int, E: ChartPoint, N: int | None = None) -> OrbitDatum:
    """Positive invariant-factor valuations of S_E(x, 0), sorted decreasing."""
    if E.is_symbolic():
        raise ValueError("orbit_datum_smooth needs a rational chart point")
    S0 = _restrict_y0(syzygy_matrix(k, E))
    n = N if N is not None else k + 2
    while True:
        try:
            res = snf_dvr(S0, n, "x")
            break
        except PrecisionExhausted:
            if n > 8 * (k + 2):
                raise
            n *= 2
    vals = sorted((v for v in res.valuations if v > 0), reverse=True)
    return OrbitDatum(YoungDiagram(vals))


def jordan_type_at_zero(A) -> YoungDiagram:
    """Block sizes of eigenvalue 0 in the Jordan form of A, from ranks of powers."""
    A = linalg.to_fractions(A)
    n = len(A)
    if n == 0:
        return YoungDiagram()
    ranks = [n]
    P = linalg.identity(n)
    while True:
        P = linalg.matmul(P, A)
        r = linalg.rank(P)
        ranks.append(r)
        if r == ranks[-2]:
            break
    # blocks of size >= p: ranks[p-1] - ranks[p]
    at_least = [ranks[p - 1] - ranks[p] for p in range(1, len(ranks))]
    parts = []
    for p in range(len(at_least), 0, -1):
        exact = at_least[p - 1] - (at_least[p] if p < len(at_least) else 0)
        parts.extend([p] * exact)
    return YoungDiagram(parts)


def torsion_jordan_type(I: GroebnerBasis, divisor: str = "y") -> YoungDiagram:
    """Jordan type at 0 of the other variable acting on ker(divisor . : O/I -> O/I)."""
    if divisor not in ("x", "y"):
        raise ValueError("divisor must be 'x' or 'y'")
    if not I.is_zero_dimensional():
        raise InfiniteColength("torsion_jordan_type needs finite colength")
    other = "x" if divisor == "y" else "y"
    My = I.multiplication_matrix(divisor)
    Mx = I.multiplication_matrix(other)
    K = linalg.nullspace(My)  # list of basis vectors
    if not K:
        return YoungDiagram()
    # express Mx v in the kernel basis
    Kcols = linalg.transpose(K)
    action = []
    for v in K:
        w = [sum(Mx[r][c] * v[c] for c in range(len(v))) for r in range(len(v))]
        coeffs = linalg.solve(Kcols, w)
        if coeffs is None:
            raise AssertionError("kernel is not stable under the other variable")
        action.append(coeffs)
    return jordan_type_at_zero(linalg.transpose(action))


def perturbed_syzygy_ideal(mu, M, order: str = "degrevlex") -> GroebnerBasis:
    """Ideal of signed maximal minors of S_mu(x) + y M.

    S_mu(x) is (k+1) x k with x^{mu_j} in position (j, j) and zero last row.
    """
    mu = mu if isinstance(mu, YoungDiagram) else YoungDiagram(mu)
    k = mu.length
    rows = [list(r) for r in M]
    if len(rows) != k + 1 or any(len(r) != k for r in rows):
        raise ShapeError(f"M must be {k + 1}x{k} for a diagram of length {k}")
    x, y = XY.gens()
    entries = []
    for j in range(k + 1):
        row = []
        for i in range(k):
            e = y * as_fraction(rows[j][i])
            if i == j:
                e = e + x ** mu.parts[j]
            row.append(e)
        entries.append(row)
    return groebner(signed_maximal_minors(PolyMatrix(entries, XY, k)), order)


def _non_periodic(d) -> bool:
    l = len(d)
    return all(d != d[s:] + d[:s] for s in range(1, l) if l % s == 0)


@dataclass(frozen=True)
class NodalSeriesMatrix:
    """kind "continuous" (data, k, u) or "discrete" (data); data are (nu, mu) pairs."""

    kind: str
    data: tuple
    k: int = 0
    u: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "data", tuple((int(a), int(b)) for a, b in self.data))
        object.__setattr__(self, "u", as_fraction(self.u))
        if any(a <= 0 or b <= 0 for a, b in self.data):
            raise ValueError("exponents must be positive")
        if self.kind == "continuous":
            if not self.data:
                raise ValueError("continuous series needs a non-empty sequence")
            if self.k < 1:
                raise ValueError("block size must be positive")
            if self.u == 0:
                raise ValueError("eigenvalue must be nonzero")
            if not _non_periodic(self.data):
                raise ValueError("sequence must be non-periodic")
        elif self.kind != "discrete":
            raise ValueError(f"unknown series {self.kind!r}")


def nodal_series_matrix(spec: NodalSeriesMatrix) -> PolyMatrix:
    x, y = XY.gens()
    zero = XY.zero()
    d = spec.data
    if spec.kind == "discrete":
        n = len(d)
        rows = [[zero] * n for _ in range(n + 1)]
        for t, (nu, mu) in enumerate(d):
            rows[t][t] = x**nu
            rows[t + 1][t] = y**mu
        return PolyMatrix(rows, XY, n)
    k, u, l = spec.k, spec.u, len(d)
    size = k * l
    rows = [[zero] * size for _ in range(size)]

    def jordan(r, c):
        return u if r == c else (Fraction(1) if c == r + 1 else Fraction(0))

    if l == 1:
        nu, mu = d[0]
        for r in range(k):
            for c in range(k):
                rows[r][c] = x**nu * int(r == c) - y**mu * jordan(r, c)
        return PolyMatrix(rows, XY, size)
    for b, (nu, mu) in enumerate(d):
        for r in range(k):
            rows[b * k + r][b * k + r] = x**nu
            if b + 1 < l:
                rows[(b + 1) * k + r][b * k + r] = y**mu
    mu_l = d[-1][1]
    for r in range(k):
        for c in range(k):
            j = jordan(r, c)
            if j:
                rows[r][(l - 1) * k + c] = y**mu_l * j
    return PolyMatrix(rows, XY, size)


def _mult_matrix(I: GroebnerBasis, p: Poly):
    return I.evaluate_in_quotient(p)


def hom_tangent_dim(k: int, E: ChartPoint) -> int:
    """dim Hom(I, O/I) from the Hilbert-Burch presentation of I.

    phi is determined by phi(g_j) in O/I for the signed minors g_j; the
    relations sum_j S[j][c] g_j = 0 from the columns of S cut it out.
    """
    S = syzygy_matrix(k, E)
    I = hilbert_burch_ideal(k, E)
    n = I.colength()
    if n is INFINITE:
        raise InfiniteColength("chart point ideal is not zero-dimensional")
    unknowns = (k + 1) * n
    rows = []
    for c in range(k):
        blocks = [_mult_matrix(I, S[j, c]) for j in range(k + 1)]
        for r in range(n):
            rows.append([blocks[j][r][s] for j in range(k + 1) for s in range(n)])
    return unknowns - linalg.rank(rows)


def hom_space(I: GroebnerBasis):
    """A basis of Hom(I, O/I) as matrices Phi: I/I^2 -> O/I.

    Returns (basis of Phi matrices, V) where V is the list of polynomials
    whose classes form the chosen basis of I/I^2; Phi[r][s] is the
    coefficient of the r-th standard monomial of O/I in phi(V[s]).
    """
    if not I.is_zero_dimensional():
        raise InfiniteColength("hom_space needs finite colength")
    I2 = ideal_product(I, I)
    st2 = I2.staircase().monomials
    st1 = I.staircase().monomials
    n1 = len(st1)
    # I/I^2 inside O/I^2: span of g * m for generators g and standard monomials m
    x, y = XY.gens()
    spanning = []
    for g in I.generators:
        for a, b in st2:
            spanning.append(I2.normal_form(g * x**a * y**b))
    vecs = [I2.coordinates(p) for p in spanning]
    red, piv = linalg.rref(vecs)
    basis_vecs = [red[t] for t in range(len(piv))]
    if not basis_vecs:
        return [], []
    V = [sum((XY.monomial({"x": a, "y": b}, c) for (a, b), c in zip(st2, v) if c), XY.zero()) for v in basis_vecs]
    cols = linalg.transpose(basis_vecs)
    dimV = len(V)

    def action(var):
        out = []
        for p in V:
            w = I2.coordinates(p * XY.gen(var))
            coeffs = linalg.solve(cols, w)
            if coeffs is None:
                raise AssertionError("I/I^2 is not stable")
            out.append(coeffs)
        return linalg.transpose(out)  # dimV x dimV, column s = image of V[s]

    Ax, Ay = action("x"), action("y")
    X1, Y1 = I.multiplication_matrix("x"), I.multiplication_matrix("y")
    # unknown Phi (n1 x dimV), flattened row-major; Phi A - X1 Phi = 0
    nunk = n1 * dimV
    eqs = []
    for A, X in ((Ax, X1), (Ay, Y1)):
        for r in range(n1):
            for s in range(dimV):
                row = [Fraction(0)] * nunk
                for t in range(dimV):
                    row[r * dimV + t] += A[t][s]
                for t in range(n1):
                    row[t * dimV + s] -= X[r][t]
                eqs.append(row)
    null = linalg.nullspace(eqs, nunk)
    basis = [[list(v[r * dimV:(r + 1) * dimV]) for r in range(n1)] for v in null]
    return basis, V


def divisor_intersection_length(I: GroebnerBasis, g):
    """Colength of I + (g), or INFINITE."""
    J = ideal_sum(I, [g], order=I.order)
    return J.colength()


def char_poly(A) -> Poly:
    """det(x I - A) by the Faddeev-LeVerrier recursion."""
    A = linalg.to_fractions(A)
    n = len(A)
    x = XY.gen("x")
    coeffs = [Fraction(1)]
    M = linalg.zeros(n, n)
    for t in range(1, n + 1):
        M = linalg.matmul(A, M)
        for i in range(n):
            M[i][i] += coeffs[-1]
        AM = linalg.matmul(A, M)
        c = -sum(AM[i][i] for i in range(n)) / t
        coeffs.append(c)
    out = XY.zero()
    for t, c in enumerate(coeffs):
        out = out + x ** (n - t) * c
    return out


def nilcone_check(k: int, E: ChartPoint) -> dict:
    """Divisor length, last minor at y = 0 versus the characteristic polynomial,
    and (for nilpotent top block) whether I + (y) = (x^k, y)."""
    if any(v != 0 for v in E.values[k]):
        raise ValueError("the last row of E must vanish")
    I = hilbert_burch_ideal(k, E)
    y = XY.gen("y")
    length = divisor_intersection_length(I, y)
    minors = signed_maximal_minors(syzygy_matrix(k, E))
    last = minors[k].subs({"y": XY.zero()})
    top = [list(E.values[j]) for j in range(k)]
    cp = char_poly(top)
    P = linalg.identity(k)
    for _ in range(k):
        P = linalg.matmul(P, top)
    nilpotent = not any(v for r in P for v in r)
    out = {
        "k": k,
        "length": length,
        "last_minor": str(last),
        "char_poly": str(cp),
        "minor_is_char_poly": last == cp,
        "nilpotent": nilpotent,
    }
    if nilpotent:
        J = ideal_sum(I, [y])
        out["sum_is_xk_y"] = J == groebner([XY.gen("x") ** k, y])
    return out
