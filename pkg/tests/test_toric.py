from fractions import Fraction

import pytest

from hilbpoisson.brackets import darboux_structure, quad_nodal_structure
from hilbpoisson.holonomy import is_cyclically_monotone
from hilbpoisson.toric import (
    AdmissiblePair,
    Domino,
    NotDecomposable,
    Other,
    Rectangular,
    Smoothable,
    WeightMatrix,
    admissible_pairs,
    biresidue_matrix,
    biresidue_ordering,
    classify_weight,
    decompose_weight,
    find_coweight,
    invariant_projection,
    inverse_relation_check,
    is_rectangular,
    monomial_weights,
    pi_coefficient,
    pi_delta,
    pi_matrix,
    smoothable_basis,
    smoothable_weights_by_type,
    verify_degeneration,
    weight_of_term,
)
from hilbpoisson.exactalg import linalg

B2 = [
    [0, 1, 0, 0, 0, 0],
    [-1, 0, 1, 1, 0, 0],
    [0, -1, 0, 1, 1, 0],
    [0, -1, -1, 0, 1, 0],
    [0, 0, -1, -1, 0, 1],
    [0, 0, 0, 0, -1, 0],
]


def _noninvariant(k):
    return [w for *_, w in monomial_weights(quad_nodal_structure(k)) if not w.is_zero()]


def test_weight_of_term_examples():
    assert weight_of_term(1, [(0, 0), (0, 1)], ((0, 0), (0, 1))).is_zero()
    W = weight_of_term(1, {(0, 0): 2}, ((0, 1), (0, 1)))
    assert W.entries == ((2,), (-2,))


def test_weight_of_term_range():
    with pytest.raises(IndexError):
        weight_of_term(1, [(1, 0)], ((0, 0), (0, 1)))


def test_pi_delta_k1():
    assert pi_coefficient(0, 0, 0, 1) == 1
    assert pi_delta(1) == quad_nodal_structure(1)
    assert invariant_projection(quad_nodal_structure(1)) == quad_nodal_structure(1)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_projection_of_quad_is_pi_delta(k):
    assert invariant_projection(quad_nodal_structure(k)) == pi_delta(k)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_projection_of_darboux_vanishes(k):
    assert invariant_projection(darboux_structure(k)) == darboux_structure(k) * 0


def test_projection_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        invariant_projection(darboux_structure(2) + quad_nodal_structure(2))


def test_noninvariant_monomials_of_difference():
    for k in (1, 2, 3):
        diff = quad_nodal_structure(k) - pi_delta(k)
        assert all(not w.is_zero() for *_, w in monomial_weights(diff))


def test_biresidue_k2_reference():
    B = biresidue_matrix(2)
    assert B.tolist() == B2
    assert list(B.ordering) == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (1, 2)]
    assert list(biresidue_ordering(1)) == [(0, 0), (0, 1)]


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_biresidue_skew_and_monotone(k):
    B = biresidue_matrix(k).tolist()
    assert B == [[-v for v in r] for r in linalg.transpose(B)]
    assert is_cyclically_monotone(B)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_pi_times_b_is_minus_identity(k):
    assert inverse_relation_check(k) == Fraction(-1)
    P = linalg.to_fractions(pi_matrix(k))
    B = linalg.to_fractions(biresidue_matrix(k).tolist())
    assert linalg.matmul(P, B) == [[-v for v in r] for r in linalg.identity(len(P))]


def test_classification_examples():
    typeI = WeightMatrix.from_positions(2, plus=[(0, 0), (1, 1)], minus=[(0, 1), (1, 0)])
    assert classify_weight(typeI) == Smoothable("I")
    assert is_rectangular(typeI) == Rectangular((0, 0), (1, 1))
    assert classify_weight(Domino((0, 0), (1, 0)).weight(2)) == Other()
    big = WeightMatrix.from_positions(3, plus=[(0, 0), (2, 2)], minus=[(0, 2), (2, 0)])
    assert classify_weight(big) == Rectangular((0, 0), (2, 2))


def test_domino_valuation():
    assert Domino((1, 0), (0, 0)).orientation == "S"
    assert Domino((1, 0), (0, 0)).valuation == 0
    assert Domino((0, 1), (0, 0)).orientation == "E"
    assert Domino((0, 1), (0, 0)).valuation == Fraction(1, 2)
    with pytest.raises(ValueError):
        Domino((0, 0), (1, 1))


@pytest.mark.parametrize("k", [2, 3])
def test_quad_weights_are_rectangular_or_admissible(k):
    for w in _noninvariant(k):
        assert is_rectangular(w) is not None or admissible_pairs(w)


def test_classification_counts():
    def counts(k):
        out = {}
        for w in _noninvariant(k):
            name = type(classify_weight(w)).__name__
            out[name] = out.get(name, 0) + 1
        return out

    assert counts(2) == {"Smoothable": 4, "AdmissiblePair": 10, "Rectangular": 1}
    assert counts(3) == {"Smoothable": 10, "AdmissiblePair": 124, "Rectangular": 12}


def test_admissible_pair_shape():
    for w in _noninvariant(3):
        for p in admissible_pairs(w):
            assert isinstance(p, AdmissiblePair)
            assert p.first.length == p.second.length
            assert p.first.valuation > p.second.valuation


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_smoothable_basis_size_rank_rows(k):
    basis = smoothable_basis(k)
    assert len(basis) == k * (k + 1) - 1
    assert linalg.rank([list(s.vector()) for s in basis]) == len(basis)
    B = biresidue_matrix(k)
    for r, s in enumerate(basis):
        assert s.rows == (r, r + 1)
        for c, (i, j) in enumerate(B.ordering):
            assert s[j, i] == B.entries[r + 1][c] - B.entries[r][c]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_basis_contains_every_typed_weight(k):
    typed = smoothable_weights_by_type(k)
    basis = smoothable_basis(k)
    kinds = [s.kind for s in basis]
    for kind, ws in typed.items():
        assert kinds.count(kind) == len(ws)
        assert all(w in basis for w in ws)
    assert kinds.count("corner") == 1


def test_type_counts():
    t = smoothable_weights_by_type(3)
    assert (len(t["I"]), len(t["IIa"]), len(t["IIb"])) == (6, 2, 2)


def test_decompose_unit_square():
    w = WeightMatrix.from_positions(2, plus=[(0, 0), (1, 1)], minus=[(0, 1), (1, 0)])
    [(s, c)] = decompose_weight(w)
    assert s == w and c == 1


def test_decompose_telescoping_rectangle():
    w = WeightMatrix.from_positions(3, plus=[(0, 0), (2, 2)], minus=[(0, 2), (2, 0)])
    parts = decompose_weight(w)
    assert [c for _, c in parts] == [1, 1, 1, 1]
    assert all(s.kind == "I" for s, _ in parts)
    total = WeightMatrix.zero(3)
    for s, c in parts:
        total = total + s * c
    assert total == w


def test_decompose_outside_span():
    with pytest.raises(NotDecomposable):
        decompose_weight(WeightMatrix.from_positions(2, plus=[(0, 0)]))


@pytest.mark.parametrize("k", [2, 3])
def test_quad_weights_decompose_nonnegatively(k):
    for w in _noninvariant(k):
        parts = decompose_weight(w)
        assert all(c > 0 for _, c in parts)
        assert all(s.kind != "corner" for s, _ in parts)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_rectangles_and_short_pairs_decompose(k):
    cells = [(r, c) for r in range(k + 1) for c in range(k)]
    for r1, c1 in cells:
        for r2, c2 in cells:
            if r2 > r1 and c2 > c1:
                w = WeightMatrix.from_positions(k, plus=[(r1, c1), (r2, c2)], minus=[(r1, c2), (r2, c1)])
                assert all(c > 0 for _, c in decompose_weight(w))


def test_coweight_values():
    assert find_coweight(2).entries == ((1, 1), (-3, -2), (-2, 0))
    assert find_coweight(3).entries == ((5, 12, 12), (-8, 0, 1), (-14, -5, -3), (-13, -3, 0))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_coweight_positive_on_basis(k):
    w = find_coweight(k)
    assert all(w.dot(s) >= 1 for s in smoothable_basis(k))


@pytest.mark.parametrize("k", [2, 3])
def test_coweight_positive_on_quad_weights(k):
    w = find_coweight(k)
    assert all(w.dot(v) > 0 for v in _noninvariant(k))


def test_verify_degeneration():
    assert verify_degeneration(1)["note"] == "degenerate case, limit immediate"
    r2 = verify_degeneration(2)
    assert (r2["invariant_terms"], r2["noninvariant_terms"], r2["min_positive_exponent"]) == (7, 15, 1)
    r3 = verify_degeneration(3)
    assert (r3["invariant_terms"], r3["noninvariant_terms"], r3["min_positive_exponent"]) == (26, 146, 1)


def test_verify_degeneration_rejects_bad_coweight():
    with pytest.raises(AssertionError):
        verify_degeneration(2, WeightMatrix.zero(2))
