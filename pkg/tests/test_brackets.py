import random
from fractions import Fraction

import pytest

from hilbpoisson.brackets import (
    PoissonStructure,
    aff_structure,
    bracket,
    coadjoint_action,
    darboux_form_mixed,
    darboux_structure,
    hamiltonian_vector_field,
    jacobi_defect,
    mult_matrix_symplectic_form,
    quad_nodal_structure,
    recursion_operator,
    structure_from_f,
)
from hilbpoisson.charts import ChartPoint, chart_ring, coords, hilbert_burch_ideal, symbolic_chart, var_name
from hilbpoisson.exactalg import linalg
from hilbpoisson.exactalg.forms import TwoForm
from hilbpoisson.exactalg.linalg import SingularMatrix
from hilbpoisson.exactalg.matrix import ShapeError

from conftest import chart_point

E00, E01 = (0, 0), (0, 1)


def test_darboux_k1():
    assert darboux_structure(1).entry(E00, E01) == -1


def test_darboux_same_half_commute():
    for k in range(1, 5):
        pi = darboux_structure(k)
        for p in coords(k):
            for q in coords(k):
                if p[1] <= p[0] and q[1] <= q[0]:
                    assert pi.entry(p, q).is_zero()
                if p[1] > p[0] and q[1] > q[0]:
                    assert pi.entry(p, q).is_zero()


def test_darboux_nondegenerate_and_skew():
    for k in range(1, 5):
        M = [[p.constant_term() for p in r] for r in darboux_structure(k).matrix()]
        assert M == [[-v for v in r] for r in linalg.transpose(M)]
        assert linalg.det(M) != 0


def test_aff_k1():
    R = chart_ring(1)
    assert aff_structure(1).entry(E00, E01) == R.gen("E[0][1]")


def test_quad_k1():
    R = chart_ring(1)
    assert quad_nodal_structure(1).entry(E00, E01) == R.gen("E[0][0]") * R.gen("E[0][1]")


def test_skew_table_validation():
    with pytest.raises(ValueError):
        PoissonStructure.from_matrix(1, [[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        PoissonStructure.from_matrix(1, [[1, 0], [0, 0]])


@pytest.mark.parametrize("k", [1, 2, 3])
def test_structure_from_f_closed_forms(k):
    assert structure_from_f(k, "1") == darboux_structure(k)
    assert structure_from_f(k, "y") == aff_structure(k)
    assert structure_from_f(k, "x*y") == quad_nodal_structure(k)


def test_structure_from_f_rejects_chart_variables():
    with pytest.raises(ValueError):
        structure_from_f(1, "E[0][0]")


@pytest.mark.parametrize("k", [1, 2, 3])
def test_structure_from_f_weight_homogeneous(k):
    assert darboux_structure(k).degrees() <= {0}
    for f, d in (("x", 1), ("y", 1), ("x^2 - 3*x*y", 2), ("x*y", 2)):
        assert structure_from_f(k, f).is_homogeneous(d)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_recursion_operators_commute_and_are_linear(k):
    Jx, Jy = recursion_operator(k, "x"), recursion_operator(k, "y")
    assert Jx.matrix.matmul(Jy.matrix) == Jy.matrix.matmul(Jx.matrix)
    assert Jx.is_linear() and Jy.is_linear()
    zero = Jx.evaluate(ChartPoint.zero(k))
    assert not any(v for r in zero for v in r)


def test_recursion_axis_validation():
    with pytest.raises(ValueError):
        recursion_operator(2, "z")


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_jacobi_linear_structures(k):
    assert jacobi_defect(darboux_structure(k)) == []
    assert jacobi_defect(aff_structure(k)) == []


@pytest.mark.parametrize("k", [1, 2, 3])
def test_jacobi_quad_nodal(k):
    assert jacobi_defect(quad_nodal_structure(k)) == []


def test_jacobi_detects_failure():
    R = chart_ring(2)
    E = {c: R.gen(var_name(*c)) for c in coords(2)}
    cs = coords(2)
    bad = PoissonStructure(2, {(cs[0], cs[1]): E[cs[0]] * E[cs[0]], (cs[1], cs[2]): E[cs[1]]})
    assert jacobi_defect(bad) != []


def test_jacobi_parallel_matches_serial():
    pi = quad_nodal_structure(2)
    assert jacobi_defect(pi, jobs=2) == jacobi_defect(pi, jobs=1)


def test_quad_nodal_skew_k4():
    pi = quad_nodal_structure(4)
    for a in coords(4):
        for b in coords(4):
            assert pi.entry(a, b) == -pi.entry(b, a)


def test_bracket_leibniz():
    pi = aff_structure(2)
    R = pi.ring
    a, b, c = (R.gen(var_name(*p)) for p in coords(2)[:3])
    F, G, H = a * b + c, b - c * c, a * c
    assert bracket(pi, F * G, H) == F * bracket(pi, G, H) + G * bracket(pi, F, H)
    assert bracket(pi, F, G) == -bracket(pi, G, F)


def test_coadjoint_identity(rng):
    for k in (1, 2, 3):
        E = chart_point(rng, k)
        assert coadjoint_action(linalg.identity(k), [0] * k, E) == E


def test_coadjoint_is_group_action(rng):
    k = 2
    E = chart_point(rng, k)
    g1, v1 = [[1, 2], [0, 1]], [1, -1]
    g2, v2 = [[0, 1], [1, 1]], [2, 3]
    g = linalg.matmul(linalg.to_fractions(g1), linalg.to_fractions(g2))
    v = [sum(Fraction(g1[r][c]) * v2[c] for c in range(k)) + v1[r] for r in range(k)]
    assert coadjoint_action(g, v, E) == coadjoint_action(g1, v1, coadjoint_action(g2, v2, E))


def test_coadjoint_singular_and_shape():
    with pytest.raises(SingularMatrix):
        coadjoint_action([[1, 1], [1, 1]], [0, 0], ChartPoint.zero(2))
    with pytest.raises(ShapeError):
        coadjoint_action([[1]], [0, 0], ChartPoint.zero(2))


def _infinitesimal(k, A, w):
    """d/dt of (1 + tA, t w) . E at t = 0: [[A, w], [0, 0]] E - E A."""
    R = chart_ring(k)
    E = [[R.gen(var_name(i, j)) for i in range(k)] for j in range(k + 1)]
    psi = [list(A[r]) + [w[r]] for r in range(k)] + [[0] * (k + 1)]
    out = {}
    for i, j in coords(k):
        val = R.zero()
        for t in range(k + 1):
            if psi[j][t]:
                val = val + E[t][i] * psi[j][t]
        for t in range(k):
            if A[t][i]:
                val = val - E[j][t] * A[t][i]
        out[(i, j)] = val
    return out


def _flatten(k, field):
    names = [var_name(*c) for c in coords(k)]
    vec = []
    for c in coords(k):
        p = field[c]
        for n in names:
            vec.append(p.diff(n).constant_term())
    return vec


@pytest.mark.parametrize("k", [1, 2])
def test_infinitesimal_coadjoint_is_hamiltonian(k):
    pi = aff_structure(k)
    R = pi.ring
    ham = [_flatten(k, hamiltonian_vector_field(pi, R.gen(var_name(*c)))) for c in coords(k)]
    gens = []
    for r in range(k):
        for s in range(k):
            A = [[int((a, b) == (r, s)) for b in range(k)] for a in range(k)]
            gens.append(_flatten(k, _infinitesimal(k, A, [0] * k)))
        w = [int(t == r) for t in range(k)]
        gens.append(_flatten(k, _infinitesimal(k, [[0] * k for _ in range(k)], w)))
    m = k * (k + 1)
    assert linalg.rank(ham) == linalg.rank(gens) == linalg.rank(ham + gens) == m


def test_mult_matrix_form_k1():
    assert mult_matrix_symplectic_form(1) == TwoForm.wedge("C[0][0]", "C[0][1]")


@pytest.mark.parametrize("k", [1, 2, 3])
def test_mult_matrix_form_is_mixed_darboux_form(k):
    omega = mult_matrix_symplectic_form(k, symbolic_chart(k, "C"))
    assert omega == darboux_form_mixed(k)


def _trace(M):
    return sum(M[i][i] for i in range(len(M)))


def _linear_trace(k, var):
    # tr M_var is weight one, hence linear in E; read off its coefficients
    R = chart_ring(k)
    out = R.zero()
    for i, j in coords(k):
        vals = [[0] * k for _ in range(k + 1)]
        vals[j][i] = 1
        t = _trace(hilbert_burch_ideal(k, ChartPoint(k, vals)).multiplication_matrix(var))
        out = out + R.gen(var_name(i, j)) * t
    return out


@pytest.mark.parametrize("k", [1, 2, 3])
def test_reduced_scheme_oracle(k):
    """{sum x_i, sum y_i} equals sum f(p_i) = tr f(M_x, M_y)."""
    rng = random.Random(7 + k)
    sx, sy = _linear_trace(k, "x"), _linear_trace(k, "y")
    for _ in range(3):
        E = chart_point(rng, k, zero_prob=0)
        assert _trace(hilbert_burch_ideal(k, E).multiplication_matrix("x")) == sx.evaluate(E.as_dict())
        I = hilbert_burch_ideal(k, E)
        Mx, My = I.multiplication_matrix("x"), I.multiplication_matrix("y")
        fM = {"1": linalg.identity(len(Mx)), "y": My, "x*y": linalg.matmul(Mx, My)}
        for f, M in fM.items():
            value = bracket(structure_from_f(k, f), sx, sy).evaluate(E.as_dict())
            assert value == _trace(M)
