from itertools import product

import pytest

from hilbpoisson.ideals import XY, groebner
from hilbpoisson.young import (
    NotHorizontallyConvex,
    YoungDiagram,
    dominance_le,
    hc,
    hc_inverse,
    is_horizontally_convex,
    monomial_scheme_ideal,
    partitions,
    stabilizer_and_codim,
    transpose,
)

x, y = XY.gens()


def all_partitions(max_size):
    for n in range(1, max_size + 1):
        yield from partitions(n)


def test_hc_reference_values():
    assert hc((5, 4, 2, 1)) == (12, 7, 3, 1)
    assert hc((6, 5, 2, 2)) == (15, 9, 4, 2)
    assert hc((1,)) == (1,)


def test_transpose_reference_values():
    assert transpose((6, 5, 2, 2)) == (4, 4, 2, 2, 2, 1)
    assert transpose((1,)) == (1,)


def test_horizontal_convexity_examples():
    assert is_horizontally_convex((3, 2, 1))
    assert not is_horizontally_convex((2, 2))
    assert is_horizontally_convex((12, 7, 3, 1))


def test_hc_inverse_rejects_nonconvex():
    with pytest.raises(NotHorizontallyConvex):
        hc_inverse((2, 2))


def test_hc_roundtrip_and_size_formula():
    for mu in all_partitions(8):
        lam = hc(mu)
        assert is_horizontally_convex(lam)
        assert hc_inverse(lam) == mu
        assert lam.size == sum(j * p for j, p in enumerate(mu.parts, 1))


def test_hc_is_onto_convex_diagrams():
    for lam in all_partitions(10):
        if is_horizontally_convex(lam):
            assert hc(hc_inverse(lam)) == lam


def test_transpose_involution():
    for mu in all_partitions(10):
        assert transpose(transpose(mu)) == mu


def test_dominance_examples():
    assert dominance_le((1,), (2,))
    assert dominance_le((2, 1), (2, 1))
    assert not dominance_le((2,), (1,))


def test_dominance_is_tail_sum_comparison():
    parts = list(all_partitions(8))
    for mu, nu in product(parts, repeat=2):
        n = max(len(mu), len(nu))
        tails = all(
            sum(mu.part(l) for l in range(j, n + 1)) <= sum(nu.part(l) for l in range(j, n + 1))
            for j in range(1, n + 1)
        )
        assert dominance_le(mu, nu) == tails


def test_dominance_partial_order():
    by_size = {}
    for mu in all_partitions(7):
        by_size.setdefault(hc(mu).size, []).append(mu)
    for group in by_size.values():
        for a, b in product(group, repeat=2):
            if dominance_le(a, b) and dominance_le(b, a):
                assert a == b
            for c in group:
                if dominance_le(a, b) and dominance_le(b, c):
                    assert dominance_le(a, c)


def test_stabilizer_examples():
    assert stabilizer_and_codim((2, 1)) == (8, 8)
    assert stabilizer_and_codim((1,)) == (2, 2)


def test_stabilizer_equals_codim():
    for mu in all_partitions(12):
        stab, codim = stabilizer_and_codim(mu)
        assert stab == codim == 2 * hc(mu).size


def test_monomial_scheme_examples():
    assert monomial_scheme_ideal((1,)) == groebner([x, y])
    I = monomial_scheme_ideal((2, 1))
    assert I == groebner([x**3, x * y, y**2]) and I.colength() == 4
    assert monomial_scheme_ideal((5, 4, 2, 1)).colength() == 23


def test_monomial_scheme_colength():
    for mu in all_partitions(8):
        assert monomial_scheme_ideal(mu).colength() == hc(mu).size


def test_diagram_validation():
    with pytest.raises(ValueError):
        YoungDiagram((1, 2))
    with pytest.raises(ValueError):
        YoungDiagram((2, 0))
    assert YoungDiagram.from_sequence((3, 1, 0, 0)) == (3, 1)
    assert str(YoungDiagram((5, 4, 2, 1))) == "(5,4,2,1)"


def test_partition_counts():
    assert [sum(1 for _ in partitions(n)) for n in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]
