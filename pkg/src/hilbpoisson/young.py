"""Young diagrams: hc, transpose, horizontal convexity, dominance, stabilizers."""

from __future__ import annotations

from functools import total_ordering

from .ideals import GroebnerBasis, XY, groebner

__all__ = [
    "YoungDiagram",
    "NotHorizontallyConvex",
    "hc",
    "hc_inverse",
    "transpose",
    "is_horizontally_convex",
    "dominance_le",
    "stabilizer_and_codim",
    "monomial_scheme_ideal",
    "partitions",
]


class NotHorizontallyConvex(ValueError):
    pass


@total_ordering
class YoungDiagram:
    """Weakly decreasing tuple of positive integers; parts are 1-indexed.

    ``mu.part(j)`` is mu_j, with mu_j = 0 beyond the length.
    """

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        self.parts = parts

    @classmethod
    def from_sequence(cls, seq):
        """Drop trailing zeros, then validate."""
        seq = list(seq)
        while seq and seq[-1] == 0:
            seq.pop()
        return cls(seq)

    def part(self, j: int) -> int:
        return self.parts[j - 1] if 1 <= j <= len(self.parts) else 0

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        if isinstance(other, YoungDiagram):
            return self.parts == other.parts
        if isinstance(other, tuple):
            return self.parts == other
        return NotImplemented

    def __lt__(self, other):
        return self.parts < tuple(other)

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"YoungDiagram({self.parts})"

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def _yd(mu) -> YoungDiagram:
    return mu if isinstance(mu, YoungDiagram) else YoungDiagram(mu)


def hc(mu) -> YoungDiagram:
    """The diagram lambda with lambda_j - lambda_{j+1} = mu_j (tail sums of mu)."""
    mu = _yd(mu)
    out = []
    total = 0
    for p in reversed(mu.parts):
        total += p
        out.append(total)
    return YoungDiagram(reversed(out))


def is_horizontally_convex(lam) -> bool:
    lam = _yd(lam)
    parts = list(lam.parts) + [0]
    diffs = [a - b for a, b in zip(parts, parts[1:])]
    return all(d1 >= d2 for d1, d2 in zip(diffs, diffs[1:]))


def hc_inverse(lam) -> YoungDiagram:
    lam = _yd(lam)
    if not is_horizontally_convex(lam):
        raise NotHorizontallyConvex(f"{lam} is not horizontally convex")
    parts = list(lam.parts) + [0]
    return YoungDiagram(a - b for a, b in zip(parts, parts[1:]))


def transpose(mu) -> YoungDiagram:
    mu = _yd(mu)
    if not mu.parts:
        return YoungDiagram()
    return YoungDiagram(sum(1 for p in mu.parts if p >= j) for j in range(1, mu.parts[0] + 1))


def dominance_le(mu, nu) -> bool:
    """hc(mu) is contained in hc(nu) as diagrams."""
    a, b = hc(mu), hc(nu)
    if a.length > b.length:
        return False
    return all(a.part(j) <= b.part(j) for j in range(1, a.length + 1))


def stabilizer_and_codim(mu) -> tuple[int, int]:
    """(sum mu_j + sum_{j,l} min(mu_j, mu_l), 2 |hc(mu)|)."""
    mu = _yd(mu)
    stab = mu.size + sum(min(a, b) for a in mu.parts for b in mu.parts)
    codim = 2 * hc(mu).size
    return stab, codim


def monomial_scheme_ideal(mu, order: str = "degrevlex") -> GroebnerBasis:
    """Ideal of x^{lambda_{l+1}} y^l, l = 0..length, where lambda = hc(mu)."""
    lam = hc(mu)
    x, y = XY.gens()
    gens = [x ** lam.part(l + 1) * y**l for l in range(lam.length + 1)]
    return groebner(gens, order)


def partitions(n: int, max_part: int | None = None):
    """All partitions of n as YoungDiagrams, in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield YoungDiagram()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield YoungDiagram((first,) + rest.parts)
