"""Command-line front end.

Exit codes: 0 success, 1 domain or validation error, 2 parse or usage error.
Costs print as exact fractions with a decimal approximation.  The seed for
randomized commands comes from --seed, then DECENT_SEED, then 0.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .costs import CostReport, CostWeights, combined_cost
from .design import Design, design_validate, simulate
from .errors import DesignCalcError, InputNotInDomain, ParseError
from .fileio import (
    export_dot,
    parse_design_file,
    parse_game_file,
    parse_machine_file,
    serialize_design,
)
from .games import best_reply_design, game_domain, implemented_machine
from .machine import Machine
from .synthesis import AnnealSchedule, SearchBounds, anneal, approximate_kappa, kappa


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value} (~{float(value):.6g})"
    return str(value)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _parse_weights(text: str) -> CostWeights:
    parts = text.split(",")
    if len(parts) != 3:
        raise ParseError(f"--weights needs three comma-separated rationals, got {text!r}")
    return CostWeights.of(*(p.strip() for p in parts))


def _parse_bounds(text: str, full_transmission: bool) -> SearchBounds:
    parts = text.split(",")
    if len(parts) != 3:
        raise ParseError(f"--bounds needs T,m,p, got {text!r}")
    try:
        t, m, p = (int(v.strip()) for v in parts)
    except ValueError as exc:
        raise ParseError(f"--bounds needs three integers, got {text!r}") from exc
    return SearchBounds(t, m, p, full_transmission_only=full_transmission)


def _parse_input(text: str) -> tuple[int, ...]:
    for c in text:
        if c not in "0123456789":
            raise ParseError(f"--input must be a string of symbol digits, got {text!r}")
    return tuple(int(c) for c in text)


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("DECENT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ParseError(f"DECENT_SEED must be an integer, got {env!r}") from exc
    return 0


def _print_report(report: CostReport, design: Design) -> None:
    w = report.weights
    print(f"fixed cost       c_F = {_fmt(report.c_f)}")
    print(f"variable cost    c_V = {_fmt(report.c_v)}")
    print(f"programming cost c_P = {_fmt(report.c_p)}")
    print(f"combined (x={w.x}, y={w.y}, z={w.z}) = {_fmt(report.combined)}")
    print("node  |P|  c_P  depth  mode")
    for node in design.programmed_nodes:
        cost = report.per_node[node]
        mode = "exact" if cost.policy.exact else "heuristic"
        print(f"  {node}  {cost.in_degree}  {cost.programming}  {cost.policy.depth}  {mode}")


def _validated_design(design_path: str, machine: Machine) -> Design:
    design = parse_design_file(_read(design_path))
    design_validate(design, machine.domain).raise_if_failed()
    return design


def _emit_design(design: Design, args) -> None:
    text = serialize_design(design)
    if args.out_design:
        Path(args.out_design).write_text(text)
        print(f"design written to {args.out_design}")
    else:
        print("design:")
        print(text, end="")
    if args.out_dot:
        Path(args.out_dot).write_text(export_dot(design))
        print(f"dot written to {args.out_dot}")


def cmd_validate(args) -> int:
    text = _read(args.path)
    doc = json.loads(text)  # probe the kind; parse errors map to exit 2
    if isinstance(doc, dict) and "entries" in doc:
        machine = parse_machine_file(text)
        print(f"machine ok: n={machine.n} k={machine.alphabet.size} |D|={len(machine.entries)}")
        return 0
    design = parse_design_file(text)
    if args.machine:
        machine = parse_machine_file(_read(args.machine))
        report = design_validate(design, machine.domain)
    else:
        report = design_validate(design)
    for v in report.warnings:
        print(f"warning: {v}")
    if not report.ok:
        for v in report.errors:
            print(f"error: {v}")
        return 1
    print(f"design ok: {design.num_layers} layers, {len(design.edges)} edges")
    return 0


def cmd_simulate(args) -> int:
    machine = parse_machine_file(_read(args.machine))
    design = _validated_design(args.design, machine)
    s = _parse_input(args.input)
    trace = simulate(design, s, domain=machine.domain)
    print(f"input: {''.join(map(str, s))}")
    print("outputs:")
    for layer in design.layers:
        for node in layer:
            print(f"  {node} = {trace.outputs[node]}")
    print(f"active edges (sigma={trace.active_count}):")
    for a, b in sorted(trace.active_edges):
        print(f"  {a} -> {b}")
    print(f"terminal output: {''.join(map(str, trace.terminal_outputs))}")
    return 0


def cmd_cost(args) -> int:
    machine = parse_machine_file(_read(args.machine))
    design = _validated_design(args.design, machine)
    report = combined_cost(
        design,
        machine,
        _parse_weights(args.weights),
        "heuristic" if args.cp_heuristic else "exact",
        charge_presence=args.cp_charge_presence,
        exact_limit=args.cp_exact_limit,
    )
    _print_report(report, design)
    return 0


def cmd_synth(args) -> int:
    machine = parse_machine_file(_read(args.machine))
    weights = _parse_weights(args.weights)
    bounds = _parse_bounds(args.bounds, not args.general_transmission)
    cp = dict(
        cp_mode="heuristic" if args.cp_heuristic else "exact",
        charge_presence=args.cp_charge_presence,
        cp_exact_limit=args.cp_exact_limit,
    )
    print(f"mode: {args.mode}")
    if args.mode == "exact":
        result = kappa(machine, weights, bounds, budget=args.budget, **cp)
    elif args.mode == "approx":
        result = approximate_kappa(
            machine, weights, bounds, Fraction(args.coverage), budget=args.budget, **cp
        )
    else:
        seed = _resolve_seed(args)
        print(f"seed: {seed}")
        schedule = AnnealSchedule(
            iterations=args.iterations,
            initial_temperature=args.t0,
            final_temperature=args.tf,
        )
        result = anneal(machine, weights, bounds, seed=seed, schedule=schedule, **cp)
    print(f"optimality: {result.optimality}")
    print(f"explored: {result.explored}")
    if result.coverage is not None:
        got = sorted("".join(map(str, s)) for s in result.coverage)
        print(f"coverage: {len(got)}/{len(machine.entries)} inputs matched: {' '.join(got)}")
    _print_report(result.best_cost, result.best_design)
    _emit_design(result.best_design, args)
    return 0


def cmd_game(args) -> int:
    game, lags = parse_game_file(_read(args.game))
    design = best_reply_design(game, args.rounds, lags, rivals_only=args.rivals_only)
    machine = implemented_machine(design, game_domain(game))
    report = combined_cost(design, machine, _parse_weights(args.weights))
    print(f"players: {game.players}  rounds: {args.rounds}")
    print(f"implemented machine: n={machine.n} k={machine.alphabet.size} |D|={len(machine.entries)}")
    _print_report(report, design)
    _emit_design(design, args)
    return 0


def cmd_dot(args) -> int:
    design = parse_design_file(_read(args.design))
    s = _parse_input(args.input) if args.input is not None else None
    domain = None
    if args.machine:
        machine = parse_machine_file(_read(args.machine))
        design_validate(design, machine.domain).raise_if_failed()
        domain = machine.domain
    print(export_dot(design, s, domain), end="")
    return 0


def _add_cp_flags(parser) -> None:
    parser.add_argument("--cp-exact-limit", type=int, default=10, help="max fan-in for exact programming cost")
    parser.add_argument("--cp-charge-presence", action="store_true", help="charge an inspection to discover absence")
    parser.add_argument("--cp-heuristic", action="store_true", help="greedy upper bound instead of exact cost")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="decent",
        description="Design calculus for finite input-output machines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a machine or design file")
    p.add_argument("path")
    p.add_argument("--machine", help="machine file giving the domain for full design validation")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("simulate", help="run one input through a design")
    p.add_argument("design")
    p.add_argument("machine")
    p.add_argument("--input", required=True, help="input sequence, e.g. 10")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("cost", help="cost report for a design in a machine context")
    p.add_argument("design")
    p.add_argument("machine")
    p.add_argument("--weights", default="1/3,1/3,1/3")
    _add_cp_flags(p)
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("synth", help="search for a cost-minimal design")
    p.add_argument("machine")
    p.add_argument("--weights", default="1/3,1/3,1/3")
    p.add_argument("--bounds", default="2,0,8", help="T,m,p search bounds")
    p.add_argument("--general-transmission", action="store_true", help="also enumerate transmission rules")
    p.add_argument("--mode", choices=("exact", "anneal", "approx"), default="exact")
    p.add_argument("--coverage", default="1", help="fraction of inputs to match in approx mode")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--budget", type=int, default=None, help="cap on evaluated candidates")
    p.add_argument("--iterations", type=int, default=100_000)
    p.add_argument("--t0", type=float, default=None, help="initial annealing temperature")
    p.add_argument("--tf", type=float, default=1e-3, help="final annealing temperature")
    p.add_argument("--out-design")
    p.add_argument("--out-dot")
    _add_cp_flags(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("game", help="build a best-reply design from a game file")
    p.add_argument("game")
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--rivals-only", action="store_true", help="players do not observe their own previous strategy")
    p.add_argument("--weights", default="1/3,1/3,1/3")
    p.add_argument("--out-design")
    p.add_argument("--out-dot")
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("dot", help="Graphviz rendering of a design")
    p.add_argument("design")
    p.add_argument("--input", default=None, help="style active edges for this input")
    p.add_argument("--machine", help="machine file for domain checking")
    p.set_defaults(func=cmd_dot)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"parse error: line {exc.lineno} column {exc.colno}: {exc.msg}", file=sys.stderr)
        return 2
    except InputNotInDomain as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DesignCalcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
