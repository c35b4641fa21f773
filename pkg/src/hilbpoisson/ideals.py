"""Gröbner bases of ideals in Q[x, y].

Polynomials are handled internally as dicts {(a, b): Fraction} for x^a y^b.
Buchberger's algorithm uses the normal (sugar-like) selection strategy,
the coprime criterion and the chain criterion; the result is always the
reduced, monic basis sorted by leading monomial, so equal ideals give equal
bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactalg.poly import Poly, PolyRing, as_fraction

__all__ = [
    "INFINITE",
    "XY",
    "InfiniteColength",
    "GroebnerBasis",
    "Staircase",
    "groebner",
    "normal_form",
    "contains",
    "staircase_and_colength",
    "multiplication_matrix",
    "ideal_sum",
    "ideal_product",
]

XY = PolyRing(("x", "y"))


class _Infinite:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


class InfiniteColength(ValueError):
    """The quotient ring is not finite-dimensional."""


_ORDERS = {
    "degrevlex": lambda m: (m[0] + m[1], m[0]),
    "lex": lambda m: (m[1], m[0]),  # y > x
}


def _to_dict(p) -> dict:
    if isinstance(p, dict):
        return {m: Fraction(c) for m, c in p.items() if c}
    if not isinstance(p, Poly):
        c = as_fraction(p)
        return {(0, 0): c} if c else {}
    extra = p.variables() - {"x", "y"}
    if extra:
        raise ValueError(f"expected a polynomial in x, y; found {sorted(extra)}")
    out = {}
    for exps, c in p.items():
        out[(exps.get("x", 0), exps.get("y", 0))] = c
    return out


def _to_poly(d: dict) -> Poly:
    return Poly._make(XY, dict(d))


def _lead(p: dict, key):
    return max(p, key=key)


def _monic(p: dict, key) -> dict:
    lm = _lead(p, key)
    inv = 1 / p[lm]
    return {m: c * inv for m, c in p.items()}


def _sub_scaled(p: dict, q: dict, coeff: Fraction, shift) -> None:
    """p -= coeff * x^shift * q, in place."""
    sa, sb = shift
    for (a, b), c in q.items():
        m = (a + sa, b + sb)
        v = p.get(m, 0) - coeff * c
        if v:
            p[m] = v
        else:
            p.pop(m, None)


def _reduce(p: dict, basis, key) -> dict:
    """Full reduction of p modulo basis (list of (lead, monic poly))."""
    p = dict(p)
    rem = {}
    while p:
        m = _lead(p, key)
        c = p[m]
        for lm, g in basis:
            if m[0] >= lm[0] and m[1] >= lm[1]:
                _sub_scaled(p, g, c, (m[0] - lm[0], m[1] - lm[1]))
                break
        else:
            rem[m] = c
            del p[m]
    return rem


def _lcm(a, b):
    return (max(a[0], b[0]), max(a[1], b[1]))


def _spoly(f, lf, g, lg):
    l = _lcm(lf, lg)
    out = {}
    for (a, b), c in f.items():
        out[(a + l[0] - lf[0], b + l[1] - lf[1])] = c
    _sub_scaled(out, g, Fraction(1), (l[0] - lg[0], l[1] - lg[1]))
    return out


def _buchberger(gens, key):
    basis = []  # list of (lead, monic poly)
    pairs = []

    def add(h):
        lh = _lead(h, key)
        idx = len(basis)
        basis.append((lh, h))
        for i in range(idx):
            pairs.append((i, idx))

    for g in gens:
        g = _reduce(g, basis, key)
        if g:
            add(_monic(g, key))

    while pairs:
        # normal selection: smallest lcm first
        pairs.sort(key=lambda ij: key(_lcm(basis[ij[0]][0], basis[ij[1]][0])))
        i, j = pairs.pop(0)
        li, gi = basis[i]
        lj, gj = basis[j]
        if li[0] * lj[0] == 0 and li[1] * lj[1] == 0:
            # coprime leading monomials
            continue
        l = _lcm(li, lj)
        chain = False
        for t, (lt, _) in enumerate(basis):
            if t in (i, j) or lt[0] > l[0] or lt[1] > l[1]:
                continue
            if (min(i, t), max(i, t)) not in pairs and (min(j, t), max(j, t)) not in pairs:
                chain = True
                break
        if chain:
            continue
        h = _reduce(_spoly(gi, li, gj, lj), basis, key)
        if h:
            add(_monic(h, key))

    # minimalize and interreduce
    basis.sort(key=lambda t: key(t[0]))
    minimal = []
    for lm, g in basis:
        if any(lm[0] >= m[0] and lm[1] >= m[1] for m, _ in minimal):
            continue
        minimal = [(m, h) for m, h in minimal if not (m[0] >= lm[0] and m[1] >= lm[1])]
        minimal.append((lm, g))
    reduced = []
    for idx, (lm, g) in enumerate(minimal):
        others = [t for t in minimal if t[0] != lm]
        tail = {m: c for m, c in g.items() if m != lm}
        tail = _reduce(tail, others, key)
        h = dict(tail)
        h[lm] = Fraction(1)
        reduced.append((lm, h))
    reduced.sort(key=lambda t: key(t[0]))
    return reduced


@dataclass(frozen=True)
class Staircase:
    """Exponent pairs (a, b) of the standard monomials x^a y^b."""

    monomials: tuple[tuple[int, int], ...]

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def __contains__(self, m):
        return tuple(m) in self.monomials


class GroebnerBasis:
    """Reduced Gröbner basis of an ideal of Q[x, y]."""

    def __init__(self, gens, order: str = "degrevlex"):
        if order not in _ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.order = order
        self._key = _ORDERS[order]
        self._basis = _buchberger([_to_dict(g) for g in gens], self._key)
        self.generators = tuple(_to_poly(g) for _, g in self._basis)
        self._staircase = None

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(str(g) for g in self.generators)}], order={self.order!r})"

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        if other.order != self.order:
            other = GroebnerBasis(other.generators, self.order)
        return [g for _, g in self._basis] == [g for _, g in other._basis]

    def __hash__(self):
        return hash(tuple(self.generators))

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    @property
    def leading_monomials(self):
        return tuple(lm for lm, _ in self._basis)

    def is_unit(self) -> bool:
        return self.leading_monomials == ((0, 0),)

    def is_zero(self) -> bool:
        return not self._basis

    def _nf_dict(self, p) -> dict:
        return _reduce(_to_dict(p), self._basis, self._key)

    def normal_form(self, p) -> Poly:
        return _to_poly(self._nf_dict(p))

    def contains(self, p) -> bool:
        return not self._nf_dict(p)

    def contains_ideal(self, other: "GroebnerBasis") -> bool:
        return all(self.contains(g) for g in other.generators)

    def is_zero_dimensional(self) -> bool:
        lms = self.leading_monomials
        return any(b == 0 for a, b in lms) and any(a == 0 for a, b in lms)

    def staircase(self) -> Staircase:
        if self._staircase is None:
            if not self.is_zero_dimensional():
                raise InfiniteColength("the quotient is infinite-dimensional")
            lms = self.leading_monomials
            ax = min(a for a, b in lms if b == 0)
            by = min(b for a, b in lms if a == 0)
            mons = [
                (a, b)
                for a in range(ax)
                for b in range(by)
                if not any(a >= la and b >= lb for la, lb in lms)
            ]
            mons.sort(key=self._key)
            self._staircase = Staircase(tuple(mons))
        return self._staircase

    def colength(self):
        if not self.is_zero_dimensional():
            return INFINITE
        return len(self.staircase())

    def coordinates(self, p) -> list[Fraction]:
        """Coefficients of the normal form of p in the staircase basis."""
        nf = self._nf_dict(p)
        return [nf.get(m, Fraction(0)) for m in self.staircase()]

    def multiplication_matrix(self, var: str) -> list[list[Fraction]]:
        if var not in ("x", "y"):
            raise ValueError("var must be 'x' or 'y'")
        shift = (1, 0) if var == "x" else (0, 1)
        basis = self.staircase().monomials
        cols = [self.coordinates({(a + shift[0], b + shift[1]): 1}) for a, b in basis]
        n = len(basis)
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def evaluate_in_quotient(self, p) -> list[list[Fraction]]:
        """Matrix of multiplication by p on the quotient ring."""
        basis = self.staircase().monomials
        pd = _to_dict(p)
        cols = []
        for a, b in basis:
            prod = {(u + a, v + b): c for (u, v), c in pd.items()}
            cols.append(self.coordinates(prod))
        n = len(basis)
        return [[cols[j][i] for j in range(n)] for i in range(n)]


def groebner(gens, order: str = "degrevlex") -> GroebnerBasis:
    return GroebnerBasis(list(gens), order)


def normal_form(p, G: GroebnerBasis) -> Poly:
    return G.normal_form(p)


def contains(G: GroebnerBasis, p) -> bool:
    return G.contains(p)


def staircase_and_colength(G: GroebnerBasis):
    if not G.is_zero_dimensional():
        return None, INFINITE
    st = G.staircase()
    return st, len(st)


def multiplication_matrix(G: GroebnerBasis, var: str):
    return G.multiplication_matrix(var)


def ideal_sum(*ideals_or_gens, order: str = "degrevlex") -> GroebnerBasis:
    gens = []
    for item in ideals_or_gens:
        if isinstance(item, GroebnerBasis):
            gens.extend(item.generators)
        elif isinstance(item, (list, tuple)):
            gens.extend(item)
        else:
            gens.append(item)
    return GroebnerBasis(gens, order)


def ideal_product(I: GroebnerBasis, J: GroebnerBasis) -> GroebnerBasis:
    return GroebnerBasis([f * g for f in I.generators for g in J.generators], I.order)
