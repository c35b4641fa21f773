"""The ten acceptance checks, each runnable for a chosen k.

Every check returns a CheckResult with a short name, a pass flag and a
details dict of JSON-friendly values.  Random inputs come from a seeded
random.Random so reruns are identical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .brackets import (
    aff_structure,
    coadjoint_action,
    darboux_structure,
    jacobi_defect,
    quad_nodal_structure,
    structure_from_f,
)
from .charleaves import annihilation_checks, ideal_invariant, modular_vf
from .charts import ChartPoint, hilbert_burch_ideal
from .exactalg import linalg
from .holonomy import constant_in_rowspan, enumerate_cm_01, interval_matrix, realize_intervals
from .ideals import XY, groebner
from .orbits import hom_tangent_dim, nilcone_check, orbit_datum_smooth, torsion_jordan_type
from .toric import (
    biresidue_matrix,
    decompose_weight,
    find_coweight,
    inverse_relation_check,
    invariant_projection,
    monomial_weights,
    pi_delta,
    smoothable_basis,
)
from .young import hc, monomial_scheme_ideal, partitions, stabilizer_and_codim, transpose

__all__ = ["CheckResult", "CHECKS", "run_all", "random_chart_point", "REFERENCE_B2"]

REFERENCE_B2 = (
    (0, 1, 0, 0, 0, 0),
    (-1, 0, 1, 1, 0, 0),
    (0, -1, 0, 1, 1, 0),
    (0, -1, -1, 0, 1, 0),
    (0, 0, -1, -1, 0, 1),
    (0, 0, 0, 0, -1, 0),
)


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "criterion": self.number,
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "details": self.details,
        }


def random_chart_point(rng: random.Random, k: int, zero_prob=0.4, bound=3, last_row_zero=False) -> ChartPoint:
    """Sparse small-integer chart point; sparsity makes nonempty orbit data common."""
    rows = []
    for j in range(k + 1):
        row = []
        for _ in range(k):
            if (last_row_zero and j == k) or rng.random() < zero_prob:
                row.append(0)
            else:
                row.append(Fraction(rng.randint(-bound, bound), rng.choice([1, 1, 2])))
        rows.append(row)
    return ChartPoint(k, rows)


def _random_invertible(rng, k, bound=3):
    while True:
        g = [[Fraction(rng.randint(-bound, bound)) for _ in range(k)] for _ in range(k)]
        if linalg.det(g) != 0:
            return g


def check_jacobi(k, jobs=None, **_):
    out = {}
    out["darboux"] = len(jacobi_defect(darboux_structure(k), jobs))
    out["aff"] = len(jacobi_defect(aff_structure(k), jobs))
    out["quad_nodal"] = len(jacobi_defect(quad_nodal_structure(k), jobs))
    return CheckResult(1, "Jacobi identity", all(v == 0 for v in out.values()), {"defects": out})


def check_bihamiltonian(k, **_):
    closed = {"1": darboux_structure(k), "y": aff_structure(k), "x*y": quad_nodal_structure(k)}
    res = {f: structure_from_f(k, f) == pi for f, pi in closed.items()}
    return CheckResult(2, "structure_from_f matches closed forms", all(res.values()), {"matches": res})


def check_reference_values(**_):
    b2 = biresidue_matrix(2).entries == REFERENCE_B2
    h = hc((5, 4, 2, 1)).parts == (12, 7, 3, 1)
    t = transpose((6, 5, 2, 2)).parts == (4, 4, 2, 2, 2, 1)
    return CheckResult(3, "reference values", b2 and h and t, {"biresidue_k2": b2, "hc": h, "transpose": t})


def check_toric(k, **_):
    quad = quad_nodal_structure(k)
    proj = invariant_projection(quad) == pi_delta(k)
    basis = smoothable_basis(k)
    count_ok = len(basis) == k * (k + 1) - 1
    rank_ok = linalg.rank([list(s.vector()) for s in basis]) == len(basis)
    B = biresidue_matrix(k)
    diffs_ok = all(
        all(s[j, i] == B.entries[r + 1][c] - B.entries[r][c] for c, (i, j) in enumerate(B.ordering))
        for r, s in enumerate(basis)
    )
    weights = [w for *_, w in monomial_weights(quad) if not w.is_zero()]
    decomposed = 0
    for w in weights:
        decompose_weight(w)
        decomposed += 1
    w = find_coweight(k)
    positive = all(w.dot(s) > 0 for s in basis) and all(w.dot(v) > 0 for v in weights)
    ok = proj and count_ok and rank_ok and diffs_ok and positive and decomposed == len(weights)
    return CheckResult(
        4,
        "toric degeneration",
        ok,
        {
            "projection_matches": proj,
            "basis_size": len(basis),
            "basis_independent": rank_ok,
            "basis_is_row_differences": diffs_ok,
            "weights_decomposed": decomposed,
            "coweight_positive": positive,
        },
    )


def check_pi_b(k, **_):
    scalars = {str(j): str(inverse_relation_check(j)) for j in range(1, k + 1)}
    ok = len(set(scalars.values())) == 1
    return CheckResult(5, "Pi times B is scalar", ok, {"scalars": scalars})


def check_holonomy(max_odd=7, max_realize=5, jobs=None, **_):
    details = {}
    ok = True
    for m in range(3, max_odd + 1, 2):
        mats = enumerate_cm_01(m, jobs)
        bad = sum(1 for B in mats if constant_in_rowspan(B))
        details[f"m={m}"] = {"matrices": len(mats), "constant_in_span": bad}
        ok = ok and bad == 0
    rt = 0
    for m in range(1, max_realize + 1):
        for B in enumerate_cm_01(m, jobs):
            if interval_matrix(realize_intervals(B)) != B:
                ok = False
            rt += 1
    details["round_trips"] = rt
    return CheckResult(6, "holonomicity lemma", ok, details)


def check_orbits(k, seed=0, samples=100, max_size=8, **_):
    rng = random.Random(seed)
    young_bad = []
    for n in range(1, max_size + 1):
        for mu in partitions(n):
            size = hc(mu).size
            stab, codim = stabilizer_and_codim(mu)
            if monomial_scheme_ideal(mu).colength() != size or codim != 2 * size:
                young_bad.append(str(mu))
    datum_bad = hom_bad = 0
    for _ in range(samples):
        E = random_chart_point(rng, k)
        if orbit_datum_smooth(k, E).diagram != torsion_jordan_type(hilbert_burch_ideal(k, E)):
            datum_bad += 1
        E = random_chart_point(rng, k, zero_prob=0.2)
        if hom_tangent_dim(k, E) != k * (k + 1):
            hom_bad += 1
    ok = not young_bad and datum_bad == 0 and hom_bad == 0
    return CheckResult(
        7,
        "orbit and leaf combinatorics",
        ok,
        {"young_failures": young_bad, "datum_mismatches": datum_bad, "tangent_failures": hom_bad, "samples": samples},
    )


def check_nilcone(k, seed=0, samples=50, **_):
    rng = random.Random(seed + 1)
    bad = 0
    nilpotent = 0
    for t in range(samples):
        if t % 5 == 0:
            # strictly upper triangular top block
            rows = [[Fraction(rng.randint(-3, 3)) if i > j else 0 for i in range(k)] for j in range(k)]
            E = ChartPoint(k, rows + [[0] * k])
        else:
            E = random_chart_point(rng, k, zero_prob=0.3, last_row_zero=True)
        r = nilcone_check(k, E)
        good = r["length"] == k and r["minor_is_char_poly"]
        if r["nilpotent"]:
            nilpotent += 1
            good = good and r["sum_is_xk_y"]
        bad += not good
    return CheckResult(8, "nilpotent cone", bad == 0, {"failures": bad, "nilpotent_samples": nilpotent, "samples": samples})


def check_charleaves(**_):
    x, y = XY.gens()
    f1 = y**2 - x**4
    f2 = y**2 - x**3
    res = {}
    for a in (Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2)):
        Ia = groebner([y + x**2 * a, x**3])
        Ja = groebner([y**2 + x**3 * a, x**2 * y, x * y**2])
        res[str(a)] = (
            ideal_invariant(modular_vf(f1), Ia)
            and annihilation_checks(f1, Ia, "containment")
            and ideal_invariant(modular_vf(f2), Ja)
            and annihilation_checks(f2, Ja, "socle")
        )
    generic = {}
    for f in (f1, f2):
        for px, py in ((2, 1), (-1, 3)):
            P = groebner([x - px, y - py])
            generic[f"{f} at ({px},{py})"] = ideal_invariant(modular_vf(f), P) or annihilation_checks(f, P, "full")
    ok = all(res.values()) and not any(generic.values())
    return CheckResult(9, "characteristic families", ok, {"families": res, "generic_points_pass": generic})


def check_coadjoint(k, seed=0, samples=50, **_):
    rng = random.Random(seed + 2)
    bad = 0
    for _ in range(samples):
        E = random_chart_point(rng, k)
        g = _random_invertible(rng, k)
        v = [Fraction(rng.randint(-3, 3)) for _ in range(k)]
        if orbit_datum_smooth(k, E) != orbit_datum_smooth(k, coadjoint_action(g, v, E)):
            bad += 1
    return CheckResult(10, "coadjoint invariance", bad == 0, {"failures": bad, "samples": samples})


CHECKS = [
    check_jacobi,
    check_bihamiltonian,
    check_reference_values,
    check_toric,
    check_pi_b,
    check_holonomy,
    check_orbits,
    check_nilcone,
    check_charleaves,
    check_coadjoint,
]


def run_all(k: int, seed: int = 0, jobs=None) -> list[CheckResult]:
    """Run all ten checks at size k; errors inside a check count as failures."""
    out = []
    for n, check in enumerate(CHECKS, 1):
        try:
            out.append(check(k=k, seed=seed, jobs=jobs))
        except (AssertionError, ArithmeticError, ValueError) as exc:
            out.append(CheckResult(n, check.__name__, False, {"error": f"{type(exc).__name__}: {exc}"}))
    return out
