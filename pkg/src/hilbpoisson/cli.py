"""The ``hilb`` command line.

Every command prints one JSON document (``--out json``, the default), a
plain text rendering (``--out text``) or LaTeX (``--out latex``).  Exit
codes: 0 success, 1 a checked property failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .brackets import bracket, jacobi_defect, structure_from_f
from .charleaves import annihilation_checks, ideal_invariant, modular_vf
from .charts import ChartPoint, es_to_haiman, haiman_to_es, hilbert_burch_ideal, symbolic_chart, syzygy_matrix, var_name
from .exactalg.matrix import ShapeError
from .exactalg.parse import ParseError, parse_poly, parse_rational
from .exactalg.poly import Poly
from .holonomy import (
    CMMatrix,
    NotSkew,
    RealizationFailure,
    constant_in_rowspan,
    enumerate_cm_01,
    interval_matrix,
    is_cyclically_monotone,
    realize_intervals,
)
from .ideals import INFINITE, XY, groebner
from .orbits import nilcone_check, orbit_datum_smooth, torsion_jordan_type
from .toric import (
    NegativeCoefficient,
    NotDecomposable,
    WeightMatrix,
    biresidue_matrix,
    classify_weight,
    decompose_weight,
    find_coweight,
    pi_delta,
    verify_degeneration,
)
from .verify import run_all
from .young import YoungDiagram, dominance_le, hc, stabilizer_and_codim, transpose

__all__ = ["main", "build_parser"]


class InputError(ValueError):
    """Bad command-line input; exit code 2."""


class PropertyFailure(Exception):
    """A checked property does not hold; exit code 1."""

    def __init__(self, payload):
        super().__init__("property failure")
        self.payload = payload


# -- input helpers ---------------------------------------------------------------


def _load_json(arg: str):
    """Inline JSON if arg starts with [ or {, '-' for stdin, else a file path."""
    try:
        if arg.lstrip().startswith(("[", "{")):
            return json.loads(arg)
        if arg == "-":
            return json.load(sys.stdin)
        with open(arg) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {arg!r}: {exc}") from exc


def _load_text(arg: str) -> str:
    if os.path.exists(arg):
        with open(arg) as fh:
            return fh.read()
    if arg == "-":
        return sys.stdin.read()
    return arg


def _rational(v) -> Fraction:
    if isinstance(v, bool):
        raise InputError("booleans are not numbers")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return parse_rational(v)
    raise InputError(f"expected an integer or rational string, got {v!r}")


def _matrix_entries(data):
    if isinstance(data, dict):
        data = data.get("entries")
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise InputError("expected a matrix as a list of rows")
    return data


def _chart_point(data, k) -> ChartPoint:
    rows = [[_rational(v) for v in r] for r in _matrix_entries(data)]
    if isinstance(data, dict) and "k" in data and data["k"] != k:
        raise InputError(f"file has k={data['k']}, expected {k}")
    return ChartPoint(k, rows)


def _generators(text: str):
    parts = [p.strip() for chunk in text.replace(";", ",").splitlines() for p in chunk.split(",")]
    gens = [parse_poly(p, XY) for p in parts if p]
    if not gens:
        raise InputError("no generators given")
    return gens


def _partition(text: str) -> YoungDiagram:
    text = text.strip().strip("()[]")
    if not text:
        return YoungDiagram()
    try:
        return YoungDiagram(int(p) for p in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad partition {text!r}: {exc}") from exc


# -- rendering --------------------------------------------------------------------


def _jsonable(v):
    if isinstance(v, (Fraction, Poly)):
        return str(v)
    if v is INFINITE:
        return "INFINITE"
    if isinstance(v, YoungDiagram):
        return list(v.parts)
    if isinstance(v, dict):
        return {str(a): _jsonable(b) for a, b in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(t) for t in v]
    return v


def dumps(value, indent=0) -> str:
    """JSON with lists of scalars kept on one line."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            return json.dumps(value)
        return "[\n" + ",\n".join(pad + dumps(v, indent + 1) for v in value) + "\n" + end + "]"
    return json.dumps(value)


def _latex_matrix(rows) -> str:
    body = " \\\\\n".join(" & ".join(r) for r in rows)
    return "\\begin{pmatrix}\n" + body + "\n\\end{pmatrix}"


def _emit(args, payload, text=None, latex=None):
    out = getattr(args, "out", "json")
    if out == "text" and text is not None:
        print(text)
    elif out == "latex" and latex is not None:
        print(latex)
    else:
        print(dumps(_jsonable(payload)))


def _ideal_payload(G):
    st = G.staircase().monomials if G.is_zero_dimensional() else None
    return {
        "basis": [str(g) for g in G.generators],
        "staircase": None if st is None else [str(XY.monomial({"x": a, "y": b})) for a, b in st],
        "length": G.colength(),
    }


# -- commands --------------------------------------------------------------------


def cmd_ideal(args):
    G = groebner(_generators(_load_text(args.gens)), args.order)
    p = _ideal_payload(G)
    _emit(args, p, text=f"basis: {', '.join(p['basis'])}\nlength: {p['length']}")


def cmd_young(args):
    mu = _partition(args.mu)
    if args.action == "hc":
        lam = hc(mu)
        _emit(args, {"mu": mu, "hc": lam}, text=str(lam))
    elif args.action == "transpose":
        t = transpose(mu)
        _emit(args, {"mu": mu, "transpose": t}, text=str(t))
    elif args.action == "dominance":
        if args.nu is None:
            raise InputError("dominance needs a second partition")
        nu = _partition(args.nu)
        le = dominance_le(mu, nu)
        _emit(args, {"mu": mu, "nu": nu, "le": le}, text=str(le).lower())
    else:
        stab, codim = stabilizer_and_codim(mu)
        _emit(
            args,
            {"mu": mu, "hc": hc(mu), "codim": codim, "stab_dim": stab},
            text=f"hc {hc(mu)}  codim {codim}  stab_dim {stab}",
        )


def cmd_chart(args):
    k = args.k
    if args.action == "syzygy":
        E = _chart_point(_load_json(args.input), k) if args.input else symbolic_chart(k)
        S = syzygy_matrix(k, E)
        rows = S.to_strings()
        _emit(args, {"k": k, "syzygy": rows}, text="\n".join("  ".join(r) for r in rows), latex=_latex_matrix(rows))
        return
    if not args.input:
        raise InputError(f"chart {args.action} needs a matrix")
    P = _chart_point(_load_json(args.input), k)
    if args.action == "ideal":
        _emit(args, _ideal_payload(hilbert_burch_ideal(k, P, args.order)))
    elif args.action == "to-haiman":
        _emit(args, {"k": k, "C": [[str(v) for v in r] for r in es_to_haiman(P).values]})
    else:
        _emit(args, {"k": k, "E": [[str(v) for v in r] for r in haiman_to_es(P).values]})


def _parse_pair(text, k):
    try:
        i, j, a, b = (int(t) for t in text.split(","))
    except ValueError as exc:
        raise InputError("--pair needs four integers i,j,a,b") from exc
    for c, r in ((i, j), (a, b)):
        if not (0 <= c < k and 0 <= r <= k):
            raise InputError(f"index ({c},{r}) out of range for k={k}")
    return (i, j), (a, b)


def cmd_bracket(args):
    k = args.k
    f = parse_poly(args.f, XY)
    pi = structure_from_f(k, f)
    if args.pair:
        p, q = _parse_pair(args.pair, k)
        ring = pi.ring
        val = bracket(pi, ring.gen(var_name(*p)), ring.gen(var_name(*q)))
        _emit(
            args,
            {"a": list(p), "b": list(q), "poly": str(val)},
            text=str(val),
            latex=val.latex(),
        )
        return
    entries = [{"a": list(a), "b": list(b), "poly": str(v)} for a, b, v in pi.items()]
    payload = {"k": k, "f": str(f), "entries": entries}
    if args.jacobi:
        defects = jacobi_defect(pi, args.jobs)
        payload["jacobi_defect"] = [
            {"triple": [list(c) for c in t], "poly": str(v)} for t, v in defects
        ]
    text = "\n".join(f"{{E[{a[0]}][{a[1]}], E[{b[0]}][{b[1]}]}} = {v}" for a, b, v in pi.items())
    latex_rows = [
        f"\\{{E_{{{a[0]}}}^{{{a[1]}}}, E_{{{b[0]}}}^{{{b[1]}}}\\}} &= {v.latex()} \\\\" for a, b, v in pi.items()
    ]
    latex = "\\begin{align*}\n" + "\n".join(latex_rows) + "\n\\end{align*}"
    _emit(args, payload, text=text, latex=latex)
    if args.jacobi and payload["jacobi_defect"]:
        raise PropertyFailure(None)


def _weight(data, k) -> WeightMatrix:
    kk = data.get("k", k) if isinstance(data, dict) else k
    if k is not None and kk != k:
        raise InputError(f"weight has k={kk}, expected {k}")
    try:
        return WeightMatrix(kk, [[int(v) for v in r] for r in _matrix_entries(data)])
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def cmd_toric(args):
    k = args.k
    if args.action == "pi-delta":
        pi = pi_delta(k)
        _emit(args, {"k": k, "entries": [{"a": list(a), "b": list(b), "poly": str(v)} for a, b, v in pi.items()]})
    elif args.action == "biresidues":
        B = biresidue_matrix(k)
        rows = [[str(v) for v in r] for r in B.entries]
        _emit(
            args,
            {"k": k, "ordering": [list(c) for c in B.ordering], "entries": B.tolist()},
            text="\n".join(" ".join(f"{v:>2}" for v in r) for r in B.entries),
            latex=_latex_matrix(rows),
        )
    elif args.action == "decompose":
        if not args.input:
            raise InputError("decompose needs a weight matrix")
        W = _weight(_load_json(args.input), k)
        cls = classify_weight(W)
        try:
            terms = decompose_weight(W)
        except (NotDecomposable, NegativeCoefficient) as exc:
            raise PropertyFailure({"weight": W.to_json(), "class": type(cls).__name__, "error": str(exc)}) from exc
        _emit(
            args,
            {
                "weight": W.to_json(),
                "class": type(cls).__name__,
                "terms": [{"kind": s.kind, "rows": list(s.rows), "coefficient": c, "entries": s.to_json()["entries"]} for s, c in terms],
            },
        )
    elif args.action == "coweight":
        _emit(args, find_coweight(k).to_json())
    else:
        _emit(args, verify_degeneration(k))


def _cm(data) -> CMMatrix:
    try:
        return CMMatrix([[int(v) for v in r] for r in _matrix_entries(data)])
    except (TypeError, NotSkew) as exc:
        raise InputError(str(exc)) from exc


def cmd_holonomy(args):
    if args.action == "enumerate":
        try:
            m = int(args.input)
        except (TypeError, ValueError) as exc:
            raise InputError("enumerate needs an integer m") from exc
        mats = enumerate_cm_01(m, args.jobs)
        payload = {
            "m": m,
            "count": len(mats),
            "constant_in_rowspan": sum(constant_in_rowspan(B) for B in mats),
            "matrices": [B.tolist() for B in mats],
        }
        _emit(args, payload, text=f"{len(mats)} matrices")
        return
    if not args.input:
        raise InputError(f"holonomy {args.action} needs a matrix")
    B = _cm(_load_json(args.input))
    if args.action == "check":
        payload = {
            "m": B.m,
            "cyclically_monotone": is_cyclically_monotone(B),
            "constant_in_rowspan": constant_in_rowspan(B),
        }
        _emit(args, payload)
    else:
        try:
            J = realize_intervals(B)
        except RealizationFailure as exc:
            raise InputError(str(exc)) from exc
        _emit(args, {"m": B.m, "intervals": J.to_json(), "matrix": interval_matrix(J).tolist()})


def cmd_orbit(args):
    if args.action == "jordan":
        G = groebner(_generators(_load_text(args.input)))
        mu = torsion_jordan_type(G, args.divisor)
        _emit(args, {"ideal": [str(g) for g in G.generators], "jordan_type": mu}, text=str(mu))
        return
    if args.k is None:
        raise InputError(f"orbit {args.action} needs --k")
    E = _chart_point(_load_json(args.input), args.k)
    if args.action == "datum":
        d = orbit_datum_smooth(args.k, E, args.truncation)
        _emit(args, {"k": args.k, "datum": d.diagram}, text=str(d))
    else:
        r = nilcone_check(args.k, E)
        _emit(args, r)
        ok = r["length"] == args.k and r["minor_is_char_poly"] and r.get("sum_is_xk_y", True)
        if not ok:
            raise PropertyFailure(None)


def cmd_charleaf(args):
    f = parse_poly(args.f, XY)
    G = groebner(_generators(_load_text(args.ideal)))
    if not G.is_zero_dimensional():
        raise InputError("the ideal must have finite colength")
    inv = ideal_invariant(modular_vf(f), G)
    ann = annihilation_checks(f, G, args.mode)
    _emit(
        args,
        {"f": str(f), "ideal": [str(g) for g in G.generators], "mode": args.mode, "invariant": inv, "annihilated": ann},
        text=f"invariant: {str(inv).lower()}\nannihilated: {str(ann).lower()}",
    )


def cmd_verify_all(args):
    start = time.perf_counter()
    results = run_all(args.k, args.seed, args.jobs)
    passed = all(r.passed for r in results)
    report = {
        "command": "verify-all",
        "inputs": {"k": args.k, "seed": args.seed},
        "outputs": [r.to_json() for r in results],
        "status": "pass" if passed else "fail",
        "details": {"passed": sum(r.passed for r in results), "total": len(results)},
    }
    if args.timing:
        report["elapsed"] = round(time.perf_counter() - start, 3)
    text = "\n".join(f"[{'PASS' if r.passed else 'FAIL'}] {r.number:2d} {r.name}" for r in results)
    _emit(args, report, text=text + f"\nstatus: {report['status']}")
    if not passed:
        raise PropertyFailure(None)


# -- parser ------------------------------------------------------------------------


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", choices=["json", "text", "latex"], default="json")
    common.add_argument("--jobs", type=_positive, default=None, help="worker processes (default: HILB_JOBS or 1)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--truncation", type=_positive, default=None, help="series truncation order for Smith forms")
    common.add_argument("--timing", action="store_true", help="include elapsed time in reports")

    p = argparse.ArgumentParser(prog="hilb", description="Poisson structures on Hilbert schemes of points in the plane")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ideal", parents=[common], help="Groebner basis, staircase and colength")
    s.add_argument("gens", help="comma-separated generators or a file")
    s.add_argument("--order", choices=["degrevlex", "lex"], default="degrevlex")
    s.set_defaults(func=cmd_ideal)

    s = sub.add_parser("young", parents=[common], help="Young diagram operations")
    s.add_argument("action", choices=["hc", "transpose", "dominance", "leafinfo"])
    s.add_argument("mu", help="parts, e.g. 5,4,2,1")
    s.add_argument("nu", nargs="?")
    s.set_defaults(func=cmd_young)

    s = sub.add_parser("chart", parents=[common], help="triangular chart")
    s.add_argument("action", choices=["syzygy", "ideal", "to-haiman", "to-es"])
    s.add_argument("input", nargs="?", help="matrix JSON (file, inline or -)")
    s.add_argument("--k", type=_positive, required=True)
    s.add_argument("--order", choices=["degrevlex", "lex"], default="degrevlex")
    s.set_defaults(func=cmd_chart)

    s = sub.add_parser("bracket", parents=[common], help="the Poisson bracket attached to f")
    s.add_argument("--k", type=_positive, required=True)
    s.add_argument("--f", required=True)
    s.add_argument("--pair", help="i,j,a,b for the single bracket {E_i^j, E_a^b}")
    s.add_argument("--jacobi", action="store_true")
    s.set_defaults(func=cmd_bracket)

    s = sub.add_parser("toric", parents=[common], help="torus weights and the toric degeneration")
    s.add_argument("action", choices=["pi-delta", "biresidues", "decompose", "coweight", "verify"])
    s.add_argument("input", nargs="?")
    s.add_argument("--k", type=_positive, required=True)
    s.set_defaults(func=cmd_toric)

    s = sub.add_parser("holonomy", parents=[common], help="cyclically monotone matrices and intervals")
    s.add_argument("action", choices=["check", "enumerate", "realize"])
    s.add_argument("input", help="matrix JSON, or m for enumerate")
    s.set_defaults(func=cmd_holonomy)

    s = sub.add_parser("orbit", parents=[common], help="orbit data")
    s.add_argument("action", choices=["datum", "jordan", "nilcone-check"])
    s.add_argument("input", help="chart point JSON, or generators for jordan")
    s.add_argument("--k", type=_positive)
    s.add_argument("--divisor", choices=["x", "y"], default="y")
    s.set_defaults(func=cmd_orbit)

    s = sub.add_parser("charleaf", parents=[common], help="characteristic-leaf certificates")
    s.add_argument("--f", required=True)
    s.add_argument("--ideal", required=True, help="comma-separated generators or a file")
    s.add_argument("--mode", choices=["containment", "socle", "full"], default="containment")
    s.set_defaults(func=cmd_charleaf)

    s = sub.add_parser("verify-all", parents=[common], help="run the acceptance checks at size k")
    s.add_argument("--k", type=_positive, required=True)
    s.set_defaults(func=cmd_verify_all)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
        # an optional positional placed after an option is left over by argparse
        if extra and len(extra) == 1 and getattr(args, "input", "") is None and not extra[0].startswith("--"):
            args.input = extra[0]
        elif extra:
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        args.func(args)
    except PropertyFailure as exc:
        if exc.payload is not None:
            print(dumps(_jsonable({"status": "fail", "details": exc.payload})))
        return 1
    except (InputError, ParseError, ShapeError, NotSkew, ValueError, IndexError, KeyError) as exc:
        print(json.dumps({"status": "error", "error": f"{type(exc).__name__}: {exc}"}), file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
