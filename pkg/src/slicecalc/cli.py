"""Command-line front end: ``slicecalc <subcommand> [options] PAYLOAD``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import render
from .cohomology import point_cohomology
from .reps import GroupPQ, RepSyntaxError, parse
from .ring import (
    RingSyntaxError,
    basis_of_degree,
    degree_box,
    format_monomial,
    group_of_degree,
    parse_degree,
    parse_ring,
    phi_sweep,
    RODegree,
)
from .slice import build_tower, tower_sweep

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 1); 2 is reserved for sweep mismatches."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _payload(text: str) -> str:
    return sys.stdin.read().strip() if text == "-" else text


def _syntax_error(exc, text: str) -> InputError:
    pos = getattr(exc, "position", None)
    msg = str(exc)
    if pos is not None:
        msg += f"\n  {text}\n  {' ' * pos}^"
    return InputError(msg)


def _emit(args, text: str, data: dict, latex: str | None = None) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, ensure_ascii=False))
    elif args.format == "latex":
        print(latex if latex is not None else text)
    else:
        print(text)


def cmd_cohomology(args, g: GroupPQ) -> int:
    text = _payload(args.payload)
    try:
        alpha = parse(text, g)
    except RepSyntaxError as exc:
        raise _syntax_error(exc, text) from None
    ans = point_cohomology(alpha, g)
    _emit(args, render.cohomology_text(ans), ans.to_json(), render.cohomology_latex(ans))
    return EXIT_OK


def cmd_ring_basis(args, g: GroupPQ) -> int:
    d = parse_degree(_payload(args.payload))
    basis = basis_of_degree(d, g)
    group = group_of_degree(d, g)
    data = {
        "degree": list(d),
        "group": group.to_list(),
        "group_str": str(group),
        "basis": [{"monomial": format_monomial(m), "exponents": m._asdict(), "order": o}
                  for m, o in basis],
    }
    _emit(args, render.basis_text(d, basis, group), data, render.basis_latex(d, basis, group))
    return EXIT_OK


def cmd_ring_mul(args, g: GroupPQ) -> int:
    text = _payload(args.payload)
    try:
        x = parse_ring(text, g)
    except RingSyntaxError as exc:
        raise _syntax_error(exc, text) from None
    data = {
        "input": text,
        "result": str(x),
        "terms": [{"monomial": format_monomial(m), "coeff": c} for m, c in x.terms],
    }
    _emit(args, str(x), data, render.latex_element(x))
    return EXIT_OK


def cmd_slice_tower(args, g: GroupPQ) -> int:
    text = _payload(args.payload)
    try:
        alpha = parse(text, g)
    except RepSyntaxError as exc:
        raise _syntax_error(exc, text) from None
    tower = build_tower(alpha, g)
    _emit(args, render.tower_text(tower), tower.to_json(), render.tower_latex(tower))
    if args.plot or args.csv:
        from . import report
        if args.plot:
            report.plot_tower(tower, Path(args.plot))
        if args.csv:
            report.write_tower_csv(tower, Path(args.csv))
    return EXIT_OK


def _parse_box(text: str | None):
    if text is None:
        return [RODegree(m, n, l, a) for m in range(7) for n in range(7) for l in range(7)
                for a in range(m + n + l + 4)]
    d = parse_degree(text)
    if min(d) < 0:
        raise InputError(f"box bounds must be nonnegative: {text!r}")
    return list(degree_box(*d))


def cmd_verify(args, g: GroupPQ) -> int:
    sweep = phi_sweep(_parse_box(args.box), g)
    if args.towers < 0:
        raise InputError("--towers must be nonnegative")
    checks = tower_sweep(args.towers, [g])
    bad_towers = [c for c in checks if not c.ok]
    ok = sweep.all_match and not bad_towers
    lines = [f"phi sweep: {sweep.summary()}",
             f"tower sweep: {len(checks) - len(bad_towers)}/{len(checks)} towers pass"]
    for c in bad_towers[:20]:
        lines.append(f"  {c.v}: {'; '.join(c.problems)}")
    data = {
        "group": [g.p, g.q],
        "ok": ok,
        "phi_sweep": {
            "degrees": len(sweep.rows),
            "mismatches": [{"degree": list(r.degree), "ring": r.ring.to_list(),
                            "oracle": r.oracle.to_list(), "table": r.table.to_list()}
                           for r in sweep.mismatches],
        },
        "towers": {
            "count": len(checks),
            "failures": [{"input": list(c.v), "problems": list(c.problems)} for c in bad_towers],
        },
    }
    if args.report:
        from . import report
        files = report.write_verify_report(sweep, checks, Path(args.report))
        data["report_files"] = [str(f) for f in files]
        lines.append("report: " + ", ".join(str(f) for f in files))
    text = "\n".join(lines)
    latex = "\n".join("% " + line for line in lines)
    _emit(args, text, data, latex)
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("-p", type=int, default=3, help="smaller odd prime (default 3)")
    common.add_argument("-q", type=int, default=5, help="larger odd prime (default 5)")
    common.add_argument("--format", choices=("text", "json", "latex"), default="text")

    parser = _Parser(
        prog="slicecalc",
        description="Bredon cohomology of a point, its positive-cone ring, "
                    "and slice towers over C_pq.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("cohomology", parents=[common],
                        help="Mackey functor H^alpha(S^0; Z) for a representation")
    sp.add_argument("payload", help='representation, e.g. "xi" or "6+2xi-xi_p"; "-" for stdin')
    sp.set_defaults(func=cmd_cohomology)

    sp = sub.add_parser("ring-basis", parents=[common],
                        help="normal-form basis of the degree m xi + n xi_p + l xi_q - 2a piece")
    sp.add_argument("payload", help='degree "m,n,l,a"; "-" for stdin')
    sp.set_defaults(func=cmd_ring_basis)

    sp = sub.add_parser("ring-mul", parents=[common],
                        help="evaluate a ring expression to normal form")
    sp.add_argument("payload", help='expression, e.g. "u_xi * a_xip"; "-" for stdin')
    sp.set_defaults(func=cmd_ring_mul)

    sp = sub.add_parser("slice-tower", parents=[common],
                        help="slice tower of S^alpha smash HZ")
    sp.add_argument("payload", help='representation, possibly virtual; "-" for stdin')
    sp.add_argument("--plot", metavar="PNG", help="also draw the tower to this file")
    sp.add_argument("--csv", metavar="CSV", help="also write the cells as CSV")
    sp.set_defaults(func=cmd_slice_tower)

    sp = sub.add_parser("verify", parents=[common],
                        help="run the ring and tower verification sweeps")
    sp.add_argument("--box", metavar="M,N,L,A",
                    help="sweep 0<=m<=M, ..., 0<=a<=A (default: m,n,l<=6, a<=m+n+l+3)")
    sp.add_argument("--towers", type=int, default=5, metavar="MAX_COEFF",
                    help="tower sweep over honest V with coefficients <= MAX_COEFF")
    sp.add_argument("--report", metavar="DIR", help="write CSV tables and PNG figures here")
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        g = GroupPQ(args.p, args.q)
        return args.func(args, g)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
