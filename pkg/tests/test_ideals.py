from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hilbpoisson.ideals import (
    INFINITE,
    XY,
    InfiniteColength,
    contains,
    groebner,
    ideal_product,
    ideal_sum,
    multiplication_matrix,
    normal_form,
    staircase_and_colength,
)
from hilbpoisson.exactalg import linalg

x, y = XY.gens()
X, Y = sympy.symbols("x y")


def test_maximal_ideal():
    assert list(groebner([x, y]).generators) == [y, x]


def test_example_lex_staircase():
    G = groebner([y**2, x * y, x**2 - y], "lex")
    assert G.staircase().monomials == ((0, 0), (1, 0), (2, 0))


def test_example_degrevlex_staircase():
    G = groebner([y**2, x * y, x**2 - y])
    assert set(G.staircase().monomials) == {(0, 0), (1, 0), (0, 1)}


def test_monomial_ideal_is_reduced_basis():
    G = groebner([x**3, x * y, y**2])
    assert set(G.generators) == {x**3, x * y, y**2}


def test_normal_form_lex_example():
    G = groebner([y**2, x * y, x**2 - y], "lex")
    assert normal_form(y, G) == x**2


def test_contains_examples():
    assert contains(groebner([x, y]), x**2 + x * y)
    assert not contains(groebner([x**3, x * y, y**2]), x**2)


def test_staircase_and_colength():
    st_, n = staircase_and_colength(groebner([x**3, x * y, y**2]))
    assert n == 4 and set(st_.monomials) == {(0, 0), (1, 0), (2, 0), (0, 1)}
    assert staircase_and_colength(groebner([x, y]))[1] == 1
    assert staircase_and_colength(groebner([x])) == (None, INFINITE)


def test_multiplication_by_y_rank_one_nilpotent():
    M = multiplication_matrix(groebner([x**3, x * y, y**2]), "y")
    assert linalg.rank(M) == 1
    assert not any(v for r in linalg.matmul(M, M) for v in r)


def test_multiplication_at_point():
    G = groebner([x - 3, y + 1])
    assert multiplication_matrix(G, "x") == [[Fraction(3)]]


def test_multiplication_requires_finite_colength():
    with pytest.raises(InfiniteColength):
        multiplication_matrix(groebner([x**2]), "x")


def test_unit_and_zero_ideals():
    assert groebner([x + 1, x]).is_unit()
    assert groebner([XY.zero()]).is_zero()
    assert groebner([x + 1, x]).colength() == 0


def test_sum_and_product():
    I = groebner([x, y**2])
    J = groebner([y])
    assert ideal_sum(I, J) == groebner([x, y])
    assert ideal_product(I, J) == groebner([x * y, y**3])


coeff = st.integers(-4, 4)
polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), coeff, min_size=1, max_size=4)


def _poly(d):
    p = XY.zero()
    for (a, b), c in d.items():
        p = p + x**a * y**b * c
    return p


def _to_sym(p):
    return sum((c * X**e.get("x", 0) * Y**e.get("y", 0) for e, c in p.items()), sympy.Integer(0))


def _sym_reduced(gens, order):
    sym_order = "grevlex" if order == "degrevlex" else "lex"
    gens_order = (X, Y) if order == "degrevlex" else (Y, X)
    G = sympy.groebner([_to_sym(g) for g in gens], *gens_order, order=sym_order)
    out = set()
    for g in G.exprs:
        lc = sympy.LC(g, *gens_order, order=sym_order)
        q = sympy.Poly(sympy.expand(g / lc), X, Y)
        p = XY.zero()
        for (a, b), c in q.terms():
            p = p + x**a * y**b * Fraction(int(c.p), int(c.q))
        out.add(p)
    return out


@pytest.mark.parametrize("order", ["degrevlex", "lex"])
@given(st.lists(polys, min_size=1, max_size=3))
def test_reduced_basis_matches_sympy(order, gens):
    gens = [_poly(d) for d in gens]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    assert set(groebner(gens, order).generators) == _sym_reduced(gens, order)


@given(st.lists(polys, min_size=2, max_size=3), polys)
def test_normal_form_idempotent_and_generators_contained(gens, p):
    G = groebner([_poly(d) for d in gens])
    nf = G.normal_form(_poly(p))
    assert G.normal_form(nf) == nf
    assert all(G.contains(g) for g in G.generators)
    assert G.contains(_poly(p) - nf)


@given(st.lists(polys, min_size=2, max_size=3))
def test_multiplication_matrices_commute(gens):
    G = groebner([_poly(d) for d in gens] + [x**4, y**4])
    Mx, My = G.multiplication_matrix("x"), G.multiplication_matrix("y")
    assert linalg.matmul(Mx, My) == linalg.matmul(My, Mx)
