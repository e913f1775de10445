"""Command-line front end.

Subcommands:

    coeffs     print the c / q / b coefficient sequences
    affine     export an affine-coordinate table (CSV or JSON)
    intersect  one psi-class intersection number from its insertion indices
    verify     run an identity-verification suite (exit 1 on failure)
    grassmann  load a custom point file and derive table / tau / initial data

Exit codes are the machine contract: 0 pass, 1 verification failure,
2 usage or input error.  All rational output is "p/q" in lowest terms.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import grassmann as gr
from . import spin3, tau as tau_mod, zhou
from .errors import ExactComputationError
from .exactnum import format_rational
from .report import VerificationReport
from .schur import graded_poly_to_json

SUITE_DEFAULT_DEPTH = {
    "cq-identity": 30,
    "kac-schwarz": 30,
    "recursion": 20,
    "symmetry": 30,
    "genfun": 15,
    "zhou-match": 30,
    "string": 12,
    "kdv": 12,
    "rmatrix": 12,
    "vmatrix": 3,
    "thm2": 3,
}


def _wk_affine_table(max_m: int, max_n: int) -> gr.AffineTable:
    K, L = max_m // 2, max_n // 2
    table = gr.z_table_direct(gr.wk_G(K + L + 1), K, L).to_affine_table()
    return _trim(table, max_m, max_n)


def _trim(table: gr.AffineTable, max_m: int, max_n: int) -> gr.AffineTable:
    entries = {
        (m, n): v for (m, n), v in table.entries.items() if m <= max_m and n <= max_n
    }
    return gr.AffineTable(max_m, max_n, entries, table.source)


def _point_affine_table(p: gr.GrassmannPoint, max_m: int, max_n: int) -> gr.AffineTable:
    p = gr.normalize_point(p)
    K, L = max_m // 2, max_n // 2
    depth = K + L + 1
    table = gr.z_table_direct(gr.build_G(p, depth), K, L).to_affine_table("custom")
    return _trim(table, max_m, max_n)


def _load_point(path: str) -> gr.GrassmannPoint:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return gr.point_from_json(data)


def _tau_for_point(p: gr.GrassmannPoint | None, degree: int) -> tau_mod.TauSeries:
    size = max(degree - 1, 1)
    if p is None:
        return tau_mod.tau_truncated(_wk_affine_table(size, size), degree)
    return tau_mod.tau_truncated(_point_affine_table(p, size, size), degree)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_coeffs(args: argparse.Namespace) -> int:
    fn = {"c": gr.wk_c_coeff, "q": gr.wk_q_coeff, "b": zhou.b_seq}[args.kind]
    for k in range(args.max + 1):
        print(f"{k}\t{format_rational(fn(k))}")
    return 0


def cmd_affine(args: argparse.Namespace) -> int:
    if args.source == "grassmann":
        table = _wk_affine_table(args.max_m, args.max_n)
    else:
        table = zhou.zhou_affine_table(args.max_m, args.max_n)
    if args.format == "csv":
        text = table.to_csv_text()
    else:
        text = json.dumps(table.to_json_dict(), indent=None, separators=(",", ":")) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_intersect(args: argparse.Namespace) -> int:
    try:
        ks = [int(part) for part in args.spec.split(",") if part.strip() != ""]
        if not ks and args.spec.strip() != "":
            raise ValueError
        spec = tau_mod.CorrelatorSpec.of(ks)
    except ValueError:
        print(f"cannot parse spec {args.spec!r}; expected 'k1,k2,...'", file=sys.stderr)
        return 2
    if not spec.is_valid:
        print("dimension constraint violated: value is 0", file=sys.stderr)
        doc = {"spec": list(spec.exponents), "genus": None, "value": "0"}
        print(json.dumps(doc))
        return 0
    degree = max(spec.t_weight, 3)
    t = _tau_for_point(None, degree)
    result = tau_mod.intersection_number(spec, t)
    doc = {
        "spec": list(spec.exponents),
        "genus": result.genus,
        "value": format_rational(result.value),
    }
    print(json.dumps(doc))
    return 0


def _run_suite(suite: str, depth: int, flow: int, point: gr.GrassmannPoint | None) -> list[VerificationReport]:
    if suite == "cq-identity":
        return [gr.verify_cq_identity(depth)]
    if suite == "kac-schwarz":
        return [gr.verify_kac_schwarz(depth)]
    if suite == "recursion":
        G = gr.wk_G(2 * depth + 1)
        table = gr.z_table_direct(G, depth, depth)
        return [
            gr.verify_z_equivalence(G, depth, depth),
            gr.verify_z_recursion_identity(table),
            gr.verify_z_generating_series(G, depth // 2, table),
            zhou.verify_two_step_recursion(2 * depth),
        ]
    if suite == "symmetry":
        half = max(depth // 2, 1)
        G = gr.wk_G(2 * half + 1)
        table = gr.z_table_direct(G, half, half)
        return [
            zhou.verify_b_symmetry(depth, depth),
            gr.verify_symmetry(table, G, half),
        ]
    if suite == "genfun":
        G = gr.wk_G(2 * depth + 1)
        table = gr.z_table_direct(G, depth, depth)
        return [gr.verify_generating_function(G, table, depth)]
    if suite == "zhou-match":
        return [zhou.verify_zhou_match(_wk_affine_table(depth, depth), depth, depth)]
    if suite == "string":
        t = _tau_for_point(point, depth)
        reports = [tau_mod.verify_string_equation(t)]
        if point is None:
            reports.append(tau_mod.verify_string_recursion(t))
            reports.append(tau_mod.verify_dimension_filter(t))
        return reports
    if suite == "kdv":
        t = _tau_for_point(point, depth)
        return [tau_mod.verify_kdv_flow(t, flow)]
    if suite == "rmatrix":
        return [spin3.verify_R_from_G(depth)]
    if suite == "vmatrix":
        return [spin3.verify_v_relations(depth)]
    if suite == "thm2":
        G = gr.wk_G(3 * depth + 3 * depth + 5 + 1)
        table = gr.z_table_direct(G, 3 * depth + 2, 3 * depth + 2)
        return [spin3.verify_thm2(table, depth, depth)]
    raise ValueError(f"unknown suite {suite!r}")


def cmd_verify(args: argparse.Namespace) -> int:
    point = None
    if args.point:
        point = _load_point(args.point)
    if args.suite == "all":
        runs = [(suite, None) for suite in SUITE_DEFAULT_DEPTH if suite != "kdv"]
        runs += [("kdv", 1), ("kdv", 2)]
    else:
        runs = [(args.suite, args.flow)]
    any_fail = False
    for suite, flow in runs:
        depth = args.depth if args.depth is not None else SUITE_DEFAULT_DEPTH[suite]
        reports = _run_suite(suite, depth, flow if flow is not None else args.flow, point)
        for rep in reports:
            print(rep.line())
            if not rep.skipped and not rep.passed:
                any_fail = True
    return 1 if any_fail else 0


def cmd_grassmann(args: argparse.Namespace) -> int:
    point = _load_point(args.pointfile)
    doc: dict = {}
    csv_text = None
    if args.affine:
        max_m, max_n = args.affine
        table = _point_affine_table(point, max_m, max_n)
        if args.format == "csv":
            csv_text = table.to_csv_text()
        else:
            doc["affine"] = table.to_json_dict()
    if args.tau is not None:
        t = _tau_for_point(point, args.tau)
        poly = tau_mod.to_t_variables(t) if args.tau_vars == "t" else t.poly
        doc["tau"] = graded_poly_to_json(poly)
    if args.initial_data is not None:
        t = _tau_for_point(point, args.initial_data + 2)
        values = tau_mod.initial_data(t, args.initial_data)
        doc["initial_data"] = [format_rational(v) for v in values]
    if csv_text is not None and not doc:
        text = csv_text
    elif csv_text is not None:
        print("csv format is only available when --affine is the sole task", file=sys.stderr)
        return 2
    else:
        if not doc:
            print("nothing to do: pass --affine/--tau/--initial-data", file=sys.stderr)
            return 2
        text = json.dumps(doc, indent=None, separators=(",", ":")) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kdvtau",
        description="Exact Grassmannian data, tau functions and intersection numbers for the KdV hierarchy.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="print a coefficient sequence")
    p.add_argument("--kind", choices=["c", "q", "b"], required=True)
    p.add_argument("--max", type=int, required=True)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("affine", help="export an affine-coordinate table")
    p.add_argument("--source", choices=["grassmann", "zhou"], required=True)
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_affine)

    p = sub.add_parser("intersect", help="one intersection number")
    p.add_argument("spec", help="comma-separated insertion indices, e.g. 0,0,0")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITE_DEFAULT_DEPTH) + ["all"])
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--flow", type=int, default=1)
    p.add_argument("--point", default=None, help="JSON point file for string/kdv suites")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("grassmann", help="derive data from a point file")
    p.add_argument("pointfile")
    p.add_argument("--affine", type=int, nargs=2, metavar=("MAX_M", "MAX_N"))
    p.add_argument("--tau", type=int, default=None, metavar="DEGREE")
    p.add_argument("--tau-vars", choices=["theta", "t"], default="t")
    p.add_argument("--initial-data", type=int, default=None, metavar="N")
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_grassmann)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ExactComputationError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
