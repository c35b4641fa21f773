"""Formal 2-forms with polynomial coefficients."""

from __future__ import annotations

from .matrix import PolyMatrix, ShapeError
from .poly import Poly, _name_key as _KEY, canonical_names, poly_ring

__all__ = ["TwoForm", "trace_d_wedge_d"]


class TwoForm:
    """Sum of c_{uv} du^dv, stored on pairs (u, v) with u before v.

    Swapping the symbols flips the sign, and du^du vanishes.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients=None):
        self.coefficients: dict[tuple[str, str], Poly] = {}
        for (u, v), c in (coefficients or {}).items():
            self._accumulate(u, v, c)

    def _accumulate(self, u, v, c):
        if not isinstance(c, Poly):
            c = poly_ring([]).const(c)
        if u == v or c.is_zero():
            return
        if _KEY(u) > _KEY(v):
            u, v, c = v, u, -c
        key = (u, v)
        if key in self.coefficients:
            s = self.coefficients[key] + c
            if s.is_zero():
                del self.coefficients[key]
            else:
                self.coefficients[key] = s
        else:
            self.coefficients[key] = c

    @classmethod
    def wedge(cls, u: str, v: str, coeff=1) -> "TwoForm":
        f = cls()
        if u != v:
            f._accumulate(u, v, coeff)
        return f

    def coefficient(self, u: str, v: str):
        if u == v:
            return 0
        if _KEY(u) > _KEY(v):
            c = self.coefficients.get((v, u))
            return -c if c is not None else 0
        return self.coefficients.get((u, v), 0)

    def __add__(self, other: "TwoForm") -> "TwoForm":
        out = TwoForm(self.coefficients)
        for (u, v), c in other.coefficients.items():
            out._accumulate(u, v, c)
        return out

    def __neg__(self):
        return TwoForm({k: -c for k, c in self.coefficients.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        return TwoForm({k: c * scalar for k, c in self.coefficients.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TwoForm):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.coefficients.items()))

    def is_zero(self) -> bool:
        return not self.coefficients

    def pullback(self, mapping: dict) -> "TwoForm":
        """Substitute variables by polynomials, in coefficients and differentials.

        ``mapping`` sends a variable name to a Poly; d(name) becomes the
        differential of that Poly.  Unmapped names are kept.
        """
        def differential(name):
            if name not in mapping:
                return {name: None}
            p = mapping[name]
            return {v: p.diff(v) for v in sorted(p.variables(), key=_KEY)}

        out = TwoForm()
        for (u, v), c in self.coefficients.items():
            present = {n: p for n, p in mapping.items() if n in c.ring.names}
            if present:
                c = c.subs(present)
            du, dv = differential(u), differential(v)
            for a, ca in du.items():
                for b, cb in dv.items():
                    coeff = c
                    if ca is not None:
                        coeff = coeff * ca
                    if cb is not None:
                        coeff = coeff * cb
                    out._accumulate(a, b, coeff)
        return out

    def __repr__(self):
        return "TwoForm(" + str(self) + ")"

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for (u, v) in sorted(self.coefficients, key=lambda k: (_KEY(k[0]), _KEY(k[1]))):
            c = self.coefficients[(u, v)]
            parts.append(f"({c}) d{u}^d{v}")
        return " + ".join(parts)


def trace_d_wedge_d(A: PolyMatrix, B: PolyMatrix, variables=None) -> TwoForm:
    """Tr(dA ^ dB) = sum_{i,j} d(A_ij) ^ d(B_ji), expanded in d(variables)."""
    if A.rows != A.cols or B.shape != A.shape:
        raise ShapeError(f"need square matrices of one size, got {A.shape} and {B.shape}")
    if variables is None:
        variables = canonical_names(set(A.ring.names) | set(B.ring.names))
    out = TwoForm()
    n = A.rows
    for i in range(n):
        for j in range(n):
            a, b = A[i, j], B[j, i]
            if a.is_constant() or b.is_constant():
                continue
            da = [(u, a.diff(u)) for u in variables if u in a.variables()]
            db = [(v, b.diff(v)) for v in variables if v in b.variables()]
            for u, cu in da:
                for v, cv in db:
                    out._accumulate(u, v, cu * cv)
    return out
