"""Exact multivariate polynomials with rational coefficients.

A :class:`PolyRing` is an immutable, interned tuple of variable names.  A
:class:`Poly` stores its terms as a dict from dense exponent tuples (one
slot per ring variable) to nonzero :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = [
    "VariableMismatch",
    "PolyRing",
    "Poly",
    "poly_ring",
    "canonical_names",
    "as_fraction",
]


class VariableMismatch(ValueError):
    """Raised when polynomials from incompatible variable sets are combined."""


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational number")


_INDEXED = re.compile(r"^([A-Za-z]+)((?:\[\d+\])+)$")


def _name_key(name: str):
    if name == "x":
        return (0, "", ())
    if name == "y":
        return (1, "", ())
    m = _INDEXED.match(name)
    if m:
        idx = tuple(int(t) for t in re.findall(r"\d+", m.group(2)))
        return (2, m.group(1), idx)
    return (3, name, ())


def canonical_names(names) -> tuple[str, ...]:
    """Sort variable names: x, y, then indexed families by index, then the rest."""
    return tuple(sorted(set(names), key=_name_key))


class PolyRing:
    """An ordered, immutable set of variable names.  Instances are interned."""

    __slots__ = ("names", "index", "nvars", "_zero_exp", "__weakref__")
    _cache: dict = {}

    def __new__(cls, names):
        names = tuple(names)
        cached = cls._cache.get(names)
        if cached is not None:
            return cached
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self = super().__new__(cls)
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self.nvars = len(names)
        self._zero_exp = (0,) * len(names)
        cls._cache[names] = self
        return self

    def __repr__(self):
        return f"PolyRing({list(self.names)})"

    def __reduce__(self):
        return (PolyRing, (self.names,))

    def __contains__(self, name):
        return name in self.index

    def gen(self, name: str) -> "Poly":
        try:
            i = self.index[name]
        except KeyError:
            raise VariableMismatch(f"{name!r} is not a variable of {self}") from None
        exp = [0] * self.nvars
        exp[i] = 1
        return Poly._make(self, {tuple(exp): Fraction(1)})

    def gens(self) -> tuple["Poly", ...]:
        return tuple(self.gen(n) for n in self.names)

    def const(self, c) -> "Poly":
        c = as_fraction(c)
        return Poly._make(self, {self._zero_exp: c} if c else {})

    def zero(self) -> "Poly":
        return Poly._make(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def monomial(self, exps: dict, coeff=1) -> "Poly":
        exp = [0] * self.nvars
        for name, e in exps.items():
            exp[self.index[name]] = e
        c = as_fraction(coeff)
        return Poly._make(self, {tuple(exp): c} if c else {})

    def union(self, other: "PolyRing") -> "PolyRing":
        return poly_ring(self.names + other.names)

    def is_subring_of(self, other: "PolyRing") -> bool:
        return all(n in other.index for n in self.names)


def poly_ring(names) -> PolyRing:
    """The ring on the given names, in canonical order."""
    return PolyRing(canonical_names(names))



class Poly:
    """A polynomial over Q.  Treat instances as immutable."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms=None):
        self.ring = ring
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != ring.nvars:
                    raise ValueError("exponent length does not match the ring")
                c = as_fraction(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
            clean = {e: c for e, c in clean.items() if c}
        self.terms = clean
        self._hash = None

    @classmethod
    def _make(cls, ring, terms):
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # -- coercion ---------------------------------------------------------

    def to_ring(self, ring: PolyRing) -> "Poly":
        if ring is self.ring:
            return self
        used = self.variables()
        if any(n not in ring.index for n in used):
            raise VariableMismatch(
                f"cannot move a polynomial in {sorted(used)} into {ring}"
            )
        src = self.ring
        pos = [(ring.index[n], i) for i, n in enumerate(src.names) if n in ring.index]
        terms = {}
        for exp, c in self.terms.items():
            new = [0] * ring.nvars
            for j, i in pos:
                new[j] = exp[i]
            terms[tuple(new)] = c
        return Poly._make(ring, terms)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring is self.ring:
                return self, other
            if self.ring.is_subring_of(other.ring):
                return self.to_ring(other.ring), other
            if other.ring.is_subring_of(self.ring):
                return self, other.to_ring(self.ring)
            ring = self.ring.union(other.ring)
            return self.to_ring(ring), other.to_ring(ring)
        try:
            return self, self.ring.const(other)
        except TypeError:
            return None, None

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        terms = dict(a.terms)
        for exp, c in b.terms.items():
            s = terms.get(exp, 0) + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return Poly._make(a.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._make(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return b + (-a)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                c = as_fraction(other)
            except TypeError:
                return NotImplemented
            if not c:
                return self.ring.zero()
            return Poly._make(self.ring, {e: v * c for e, v in self.terms.items()})
        a, b = self._coerce(other)
        terms: dict = {}
        get = terms.get
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = get(e, 0) + c1 * c2
        return Poly._make(a.ring, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_constant() or other.is_zero():
                raise ZeroDivisionError("division only by nonzero constants")
            other = other.constant_term()
        c = as_fraction(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self * (1 / c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            if other.ring is not self.ring:
                a, b = self._coerce(other)
                return a.terms == b.terms
            return self.terms == other.terms
        try:
            c = as_fraction(other)
        except TypeError:
            return NotImplemented
        return self.is_constant() and self.constant_term() == c

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term())
                return self._hash
            # ring-independent so that embedded copies hash alike
            items = []
            for exp, c in self.terms.items():
                items.append((tuple((self.ring.names[i], e) for i, e in enumerate(exp) if e), c))
            self._hash = hash(frozenset(items))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get(self.ring._zero_exp, Fraction(0))

    def variables(self) -> set[str]:
        used = set()
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used.add(self.ring.names[i])
        return used

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, name: str) -> int:
        i = self.ring.index[name]
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def homogeneous_part(self, degree: int) -> "Poly":
        return Poly._make(
            self.ring, {e: c for e, c in self.terms.items() if sum(e) == degree}
        )

    def coefficient(self, exps: dict) -> Fraction:
        """Coefficient of the monomial given as {name: exponent}."""
        exp = [0] * self.ring.nvars
        for name, e in exps.items():
            if name not in self.ring.index:
                return Fraction(0) if e else self.constant_term()
            exp[self.ring.index[name]] = e
        return self.terms.get(tuple(exp), Fraction(0))

    def items(self):
        """(exponent-dict, coefficient) pairs in display order."""
        for exp in self._sorted_exps():
            yield {self.ring.names[i]: e for i, e in enumerate(exp) if e}, self.terms[exp]

    def _sorted_exps(self):
        return sorted(self.terms, key=lambda e: (-sum(e), tuple(-v for v in e)))

    # -- calculus and substitution -----------------------------------------

    def diff(self, name: str) -> "Poly":
        if name not in self.ring.index:
            return self.ring.zero()
        i = self.ring.index[name]
        terms = {}
        for exp, c in self.terms.items():
            e = exp[i]
            if e:
                new = list(exp)
                new[i] = e - 1
                terms[tuple(new)] = c * e
        return Poly._make(self.ring, terms)

    def subs(self, mapping: dict, ring: PolyRing | None = None) -> "Poly":
        """Substitute variables by polynomials or numbers.

        Unmapped variables are kept.  The result lives in ``ring`` when
        given, otherwise in the smallest common ring of the inputs.
        """
        for name in mapping:
            if name not in self.ring.index:
                raise VariableMismatch(f"{name!r} is not a variable of {self.ring}")
        kept = [n for n in self.ring.names if n not in mapping]
        if ring is None:
            names = set(kept)
            for v in mapping.values():
                if isinstance(v, Poly):
                    names |= set(v.ring.names)
            ring = poly_ring(names)
        images = []
        for n in self.ring.names:
            if n in mapping:
                v = mapping[n]
                images.append(v.to_ring(ring) if isinstance(v, Poly) else ring.const(v))
            else:
                images.append(ring.gen(n))
        return _compose(self, images, ring)

    def evaluate(self, values: dict) -> Fraction:
        """Evaluate at a point given as {name: rational}; all used variables needed."""
        total = Fraction(0)
        names = self.ring.names
        for exp, c in self.terms.items():
            term = c
            for i, e in enumerate(exp):
                if e:
                    try:
                        term *= as_fraction(values[names[i]]) ** e
                    except KeyError:
                        raise VariableMismatch(f"no value for {names[i]!r}") from None
            total += term
        return total

    def __call__(self, **values):
        return self.evaluate(values)

    # -- display ----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for exp in self._sorted_exps():
            c = self.terms[exp]
            factors = []
            for i, e in enumerate(exp):
                if e == 1:
                    factors.append(self.ring.names[i])
                elif e:
                    factors.append(f"{self.ring.names[i]}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if not out:
                out.append(body if c > 0 else "-" + body)
            else:
                out.append((" + " if c > 0 else " - ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def latex(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for exp in self._sorted_exps():
            c = self.terms[exp]
            factors = []
            for i, e in enumerate(exp):
                if e:
                    v = _latex_var(self.ring.names[i])
                    if e > 1:
                        v = (f"{{{v}}}" if "^" in v else v) + f"^{{{e}}}"
                    factors.append(v)
            mag = abs(c)
            if mag.denominator == 1:
                cs = str(mag.numerator)
            else:
                cs = f"\\tfrac{{{mag.numerator}}}{{{mag.denominator}}}"
            if not factors:
                body = cs
            elif mag == 1:
                body = " ".join(factors)
            else:
                body = cs + " " + " ".join(factors)
            sign = "" if c > 0 else "-"
            if out:
                sign = " + " if c > 0 else " - "
            out.append(sign + body)
        return "".join(out)


def _latex_var(name: str) -> str:
    m = _INDEXED.match(name)
    if m:
        idx = [int(t) for t in re.findall(r"\d+", m.group(2))]
        if len(idx) == 2:
            return f"{m.group(1)}_{{{idx[0]}}}^{{{idx[1]}}}"
    return name


def _compose(p: Poly, images, ring: PolyRing) -> Poly:
    """Evaluate p with variable i replaced by images[i]."""
    result = ring.zero()
    powers: dict = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = images[i] ** e
        return powers[key]

    for exp, c in p.terms.items():
        term = ring.const(c)
        for i, e in enumerate(exp):
            if e:
                term = term * power(i, e)
        result = result + term
    return result
