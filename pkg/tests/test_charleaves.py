from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hilbpoisson.charleaves import VectorField, annihilation_checks, ideal_invariant, modular_vf
from hilbpoisson.ideals import XY, InfiniteColength, groebner

x, y = XY.gens()
F1 = y**2 - x**4
F2 = y**2 - x**3
A_VALUES = [Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2), Fraction(-3, 4)]


def I_a(a):
    return groebner([y + x**2 * a, x**3])


def J_a(a):
    return groebner([y**2 + x**3 * a, x**2 * y, x * y**2])


def test_modular_vf_examples():
    assert modular_vf(y) == VectorField(-XY.one(), XY.zero())
    assert modular_vf(x * y) == VectorField(-x, y)
    assert modular_vf(F2) == VectorField(-2 * y, -3 * x**2)


def test_vector_field_application():
    zeta = modular_vf(x * y)
    assert zeta(x - 1) == -x
    assert zeta(x * y).is_zero()
    assert str(zeta) == "(-x)*d/dx + (y)*d/dy"


def test_invariance_examples():
    assert ideal_invariant(modular_vf(F1), I_a(2))
    assert ideal_invariant(modular_vf(F2), J_a(1))
    assert not ideal_invariant(modular_vf(x * y), groebner([x - 1, y - 1]))


def test_annihilation_examples():
    assert annihilation_checks(F1, I_a(2), "containment")
    assert annihilation_checks(F2, J_a(1), "socle")
    assert not annihilation_checks(F2, groebner([x - 2, y - 1]), "full")


@pytest.mark.parametrize("a", A_VALUES)
def test_families(a):
    assert I_a(a).colength() == 3 and J_a(a).colength() == 6
    assert ideal_invariant(modular_vf(F1), I_a(a))
    assert annihilation_checks(F1, I_a(a), "containment")
    assert ideal_invariant(modular_vf(F2), J_a(a))
    assert annihilation_checks(F2, J_a(a), "socle")


def test_full_mode_agrees_on_families():
    assert annihilation_checks(F1, I_a(Fraction(2)), "full")
    assert annihilation_checks(F2, J_a(Fraction(1)), "full")


def test_boundary_value_zero():
    J0 = J_a(0)
    assert J0.colength() is not None and not J0.is_zero_dimensional()
    with pytest.raises(InfiniteColength):
        annihilation_checks(F2, J0, "socle")


@pytest.mark.parametrize("f", [F1, F2])
@pytest.mark.parametrize("p", [(2, 1), (-1, 3)])
def test_off_divisor_points_fail(f, p):
    P = groebner([x - p[0], y - p[1]])
    assert not ideal_invariant(modular_vf(f), P)
    for mode in ("containment", "socle", "full"):
        assert not annihilation_checks(f, P, mode)


def test_unknown_mode():
    with pytest.raises(ValueError):
        annihilation_checks(F1, I_a(1), "other")


coeffs = st.integers(-3, 3)
polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), coeffs, max_size=4)


def _poly(d):
    p = XY.zero()
    for (a, b), c in d.items():
        p = p + x**a * y**b * c
    return p


@given(polys, polys, coeffs)
def test_linearity_and_leibniz(fd, hd, c):
    f, h = _poly(fd), _poly(hd)
    assert modular_vf(f * c) == modular_vf(f) * c
    correction = VectorField(-h.diff("y"), h.diff("x")) * f
    assert modular_vf(h * f) == modular_vf(f) * h + correction
