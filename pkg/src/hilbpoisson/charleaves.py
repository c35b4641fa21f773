"""Modular vector fields on the plane and certificates for invariant ideals.

For a curve f = 0 the modular vector field is zeta = f_x d/dy - f_y d/dx.
An ideal I is zeta-invariant when zeta maps each generator back into I;
together with f annihilating Hom(I, O/I) this singles out I as a leaf of
its own.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactalg import linalg
from .exactalg.poly import Poly
from .ideals import XY, GroebnerBasis, InfiniteColength
from .orbits import hom_space

__all__ = [
    "VectorField",
    "modular_vf",
    "ideal_invariant",
    "annihilation_checks",
]


def _xy(p) -> Poly:
    if isinstance(p, Poly):
        return p.to_ring(XY)
    return XY.const(p)


@dataclass(frozen=True)
class VectorField:
    """dx * d/dx + dy * d/dy."""

    dx: Poly
    dy: Poly

    def __call__(self, g) -> Poly:
        g = _xy(g)
        return self.dx * g.diff("x") + self.dy * g.diff("y")

    def __add__(self, other):
        return VectorField(self.dx + other.dx, self.dy + other.dy)

    def __mul__(self, h):
        h = _xy(h)
        return VectorField(self.dx * h, self.dy * h)

    __rmul__ = __mul__

    def __str__(self):
        return f"({self.dx})*d/dx + ({self.dy})*d/dy"


def modular_vf(f) -> VectorField:
    f = _xy(f)
    return VectorField(-f.diff("y"), f.diff("x"))


def ideal_invariant(zeta: VectorField, I: GroebnerBasis) -> bool:
    """zeta(g) lies in I for every generator g of I."""
    return all(I.contains(zeta(g)) for g in I.generators)


def annihilation_checks(f, I: GroebnerBasis, mode: str = "containment") -> bool:
    """Certificate that multiplication by f kills Hom(I, O/I).

    containment: f lies in I.  socle: x f and y f lie in I.  full: f phi = 0
    for a basis of Hom(I, O/I) computed through I/I^2.
    """
    f = _xy(f)
    if not I.is_zero_dimensional():
        raise InfiniteColength("annihilation_checks needs finite colength")
    if mode == "containment":
        return I.contains(f)
    if mode == "socle":
        x, y = XY.gens()
        return I.contains(x * f) and I.contains(y * f)
    if mode == "full":
        basis, _ = hom_space(I)
        F = I.evaluate_in_quotient(f)
        return all(not any(v for r in linalg.matmul(F, phi) for v in r) for phi in basis)
    raise ValueError(f"unknown mode {mode!r}")
