"""Command-line entry point: ``lamapf <subcommand> [flags]``.

Exit codes: 0 success or agreement, 1 negative verdict, 2 internal error or
oracle disagreement, 3 search limit exceeded, 64 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import cnf, render, solver
from .instance import Instance, Solution, dumps, validate
from .reduction import AuditError, ReductionMeta, audit, reduce
from .witness import WitnessError, extract, synthesize

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INTERNAL = 2
EXIT_LIMIT = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_text(path):
    if not os.path.isfile(path):
        raise UsageError(f"no such file: {path}")
    with open(path, "rb") as fh:
        return fh.read()


def _read_json(path):
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON: {exc}") from None


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit(obj):
    sys.stdout.write(dumps(obj))


def _load_formula(args):
    if args.cnf is None:
        raise UsageError("--cnf is required")
    return cnf.parse_dimacs(_read_text(args.cnf))


def _load_instance(args, check_geometry=True):
    if args.instance is None:
        raise UsageError("--instance is required")
    return Instance.from_json(_read_json(args.instance), check_geometry=check_geometry)


def _load_meta(args):
    if args.meta is None:
        raise UsageError("--meta is required")
    return ReductionMeta.from_json(_read_json(args.meta))


def _load_solution(args):
    if args.solution is None:
        raise UsageError("--solution is required")
    return Solution.from_json(_read_json(args.solution))


def cmd_reduce(args):
    f = _load_formula(args)
    inst, meta = reduce(f)
    audit(inst, meta)
    _write(args.out, dumps(inst.to_json()))
    if args.meta:
        _write(args.meta, dumps(meta.to_json()))
    print(f"reduced {f.num_vars} variables, {f.m} clauses -> {len(inst.vertices)} vertices, "
          f"{len(inst.agents)} agents, radius {inst.radius}", file=sys.stderr)
    return EXIT_OK


def _reduced_pair(args, f):
    inst, meta = reduce(f)
    if args.instance is not None:
        given = _load_instance(args)
        if given != inst:
            raise UsageError("--instance is not the reduction of --cnf")
    if args.meta is not None and _load_meta(args) != meta:
        raise UsageError("--meta is not the reduction metadata of --cnf")
    return inst, meta


def cmd_synthesize(args):
    f = _load_formula(args)
    if args.assignment is not None:
        a = cnf.assignment_from_json(_read_json(args.assignment), f.num_vars)
    else:
        a = cnf.brute_force_sat(f)
        if a is None:
            print("formula is unsatisfiable; nothing to synthesize", file=sys.stderr)
            _emit({"error": "UNSAT", "message": "formula is unsatisfiable"})
            return EXIT_NEGATIVE
    if not cnf.evaluate(f, a):
        print("assignment does not satisfy the formula", file=sys.stderr)
        _emit({"error": "UNSATISFYING_ASSIGNMENT", "message": "assignment does not satisfy the formula"})
        return EXIT_NEGATIVE
    inst, meta = _reduced_pair(args, f)
    sol = synthesize(f, a, inst, meta)
    _write(args.out, dumps(sol.to_json()))
    print(f"synthesized {len(sol)} moves", file=sys.stderr)
    return EXIT_OK


def cmd_extract(args):
    inst = _load_instance(args)
    meta = _load_meta(args)
    sol = _load_solution(args)
    try:
        a = extract(inst, meta, sol)
    except WitnessError as exc:
        print(f"extract: {exc}", file=sys.stderr)
        _emit({"error": "EXTRACT_FAILED", "message": str(exc)})
        return EXIT_NEGATIVE
    _write(args.out, dumps(cnf.assignment_to_json(a)))
    if args.cnf is not None:
        f = _load_formula(args)
        if not cnf.evaluate(f, a):
            print("extracted assignment does not satisfy the formula", file=sys.stderr)
            return EXIT_INTERNAL
        print("extracted assignment satisfies the formula", file=sys.stderr)
    return EXIT_OK


def cmd_validate(args):
    inst = _load_instance(args)
    sol = _load_solution(args)
    report = validate(inst, sol)
    _write(args.out, dumps(report.to_json()))
    print(f"{report.verdict}: {report.detail}", file=sys.stderr)
    return EXIT_OK if report.accepted else EXIT_NEGATIVE


def cmd_solve(args):
    inst = _load_instance(args)
    result = solver.solve_bfs(inst, args.max_states, args.max_seconds)
    _emit(result.to_json())
    if args.out and result.solution is not None:
        _write(args.out, dumps(result.solution.to_json()))
    print(f"{result.verdict} after {result.states_expanded} expansions", file=sys.stderr)
    return {solver.SOLVED: EXIT_OK, solver.UNSOLVABLE: EXIT_NEGATIVE}.get(result.verdict, EXIT_LIMIT)


def cmd_roundtrip(args):
    f = _load_formula(args)
    rec = solver.solvable_verdict(f, args.max_states, args.max_seconds)
    _emit(rec.to_json())
    print(f"{rec.status}: {'SAT' if rec.sat else 'UNSAT'} / {rec.bfs_verdict}", file=sys.stderr)
    return {solver.AGREE: EXIT_OK, solver.INCONCLUSIVE: EXIT_LIMIT}.get(rec.status, EXIT_INTERNAL)


def cmd_render(args):
    inst = _load_instance(args, check_geometry=False)
    if args.out is None:
        raise UsageError("--out is required")
    svg, warnings = render.render_svg(inst, scale=args.scale, zones=args.zones)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    _write(args.out, svg)
    return EXIT_OK


COMMANDS = {
    "reduce": cmd_reduce,
    "synthesize": cmd_synthesize,
    "extract": cmd_extract,
    "validate": cmd_validate,
    "solve": cmd_solve,
    "roundtrip": cmd_roundtrip,
    "render": cmd_render,
}


def _positive_int(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def build_parser():
    parser = _Parser(prog="lamapf", description="3-SAT to large-agent MAPF reduction toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--cnf")
        p.add_argument("--instance")
        p.add_argument("--meta")
        p.add_argument("--solution")
        p.add_argument("--assignment")
        p.add_argument("--out")
        p.add_argument("--max-states", type=_positive_int, default=solver.DEFAULT_MAX_STATES)
        p.add_argument("--max-seconds", type=_positive_int, default=solver.DEFAULT_MAX_SECONDS)
        # the search is single-threaded; accepted for interface stability
        p.add_argument("--threads", type=_positive_int, default=os.cpu_count() or 1)
        p.add_argument("--zones", action="store_true")
        p.add_argument("--scale", type=_positive_float, default=10.0)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        return _fail(args, "USAGE", EXIT_USAGE, exc)
    except cnf.NotThreeCNF as exc:
        return _fail(args, "NOT_3CNF", EXIT_USAGE, exc)
    except cnf.DimacsError as exc:
        return _fail(args, "PARSE_ERROR", EXIT_USAGE, exc)
    except AuditError as exc:
        return _fail(args, "AUDIT_FAILED", EXIT_INTERNAL, exc)
    except ValueError as exc:
        return _fail(args, "INVALID_INPUT", EXIT_USAGE, exc)


def _fail(args, kind, code, exc):
    _emit({"error": kind, "message": str(exc)})
    print(f"lamapf {args.command}: {exc}", file=sys.stderr)
    return code

if __name__ == "__main__":
    sys.exit(main())
