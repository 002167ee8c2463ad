"""Text formats for machines, designs and games, plus DOT export.

Serialization is order-canonical (sorted edges, sorted table rows, sorted
ids within intermediate layers) so that diffs are meaningful.  Initial and
terminal layers keep their declared order: it fixes the input/output
correspondence and must survive a round trip.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import product

from .design import Design, PartialInput, design_validate, simulate
from .errors import ParseError
from .games import LagMatrix, NormalFormGame
from .machine import Machine, machine_validate


def _load_json(text: str):
    try:
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _expect(doc, field: str, kind, where: str = ""):
    prefix = f"{where}." if where else ""
    if not isinstance(doc, dict) or field not in doc:
        raise ParseError(f"missing field {prefix}{field}")
    value = doc[field]
    if not isinstance(value, kind):
        raise ParseError(f"field {prefix}{field} has the wrong type ({type(value).__name__})")
    return value


def _parse_symbol_string(text: str, where: str) -> tuple[int, ...]:
    if not isinstance(text, str):
        raise ParseError(f"field {where} must be a string of symbol digits")
    for c in text:
        if c not in "0123456789":
            raise ParseError(f"field {where} contains a non-digit character {c!r}")
    return tuple(int(c) for c in text)


def _parse_rational(value, where: str) -> Fraction:
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"field {where} is not a rational: {value!r}") from exc
    raise ParseError(f"field {where} must be a number or a 'p/q' string")


def _rational_token(f: Fraction):
    """A JSON value that reads back as exactly this rational.

    Decimals that survive a float round trip are emitted as numbers; anything
    else (1/3, ...) becomes a 'p/q' string.
    """
    as_float = float(f)
    if Fraction(repr(as_float)) == f:
        return as_float
    return str(f)


# ---------------------------------------------------------------------------
# machines


def parse_machine_file(text: str) -> Machine:
    doc = _load_json(text)
    n = _expect(doc, "n", int)
    alphabet = _expect(doc, "alphabet", int)
    rows = _expect(doc, "entries", list)
    entries = []
    for idx, row in enumerate(rows):
        where = f"entries[{idx}]"
        if not isinstance(row, dict):
            raise ParseError(f"field {where} must be an object")
        inp = _parse_symbol_string(_expect(row, "in", str, where), f"{where}.in")
        out = _parse_symbol_string(_expect(row, "out", str, where), f"{where}.out")
        entries.append((inp, out))
    raw = {"n": n, "alphabet": alphabet, "entries": entries}
    if "freq" in doc:
        freq = doc["freq"]
        if not isinstance(freq, list):
            raise ParseError("field freq must be an array")
        raw["frequencies"] = [_parse_rational(v, f"freq[{i}]") for i, v in enumerate(freq)]
    return machine_validate(raw)


def serialize_machine(machine: Machine) -> str:
    items = sorted(machine.entries.items())
    doc = {
        "n": machine.n,
        "alphabet": machine.alphabet.size,
        "entries": [
            {"in": "".join(map(str, s)), "out": "".join(map(str, o))} for s, o in items
        ],
    }
    if machine.frequencies is not None:
        doc["freq"] = [_rational_token(machine.frequencies[s]) for s, _ in items]
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# designs


def parse_design_file(text: str) -> Design:
    doc = _load_json(text)
    layer_rows = _expect(doc, "layers", list)
    alphabet = _expect(doc, "alphabet", int)
    layers = []
    known: set[str] = set()
    for t, row in enumerate(layer_rows, start=1):
        if not isinstance(row, list) or not all(isinstance(x, str) for x in row):
            raise ParseError(f"field layers[{t - 1}] must be an array of node ids")
        layers.append(tuple(row))
        known.update(row)
    edges = []
    for idx, pair in enumerate(_expect(doc, "edges", list)):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"field edges[{idx}] must be a [from, to] pair")
        a, b = pair
        for x in (a, b):
            if x not in known:
                raise ParseError(f"edge edges[{idx}] names an unknown node id {x!r}")
        edges.append((a, b))
    behavior = doc.get("behavior", {})
    if not isinstance(behavior, dict):
        raise ParseError("field behavior must be an object keyed by node id")
    programs: dict[str, dict] = {}
    transmissions: dict[str, dict] = {}
    for node, rows in behavior.items():
        if node not in known:
            raise ParseError(f"behavior names an unknown node id {node!r}")
        if not isinstance(rows, list):
            raise ParseError(f"field behavior.{node} must be an array of rows")
        table: dict[PartialInput, int] = {}
        rule: dict[PartialInput, frozenset[str]] = {}
        for idx, row in enumerate(rows):
            where = f"behavior.{node}[{idx}]"
            if not isinstance(row, dict):
                raise ParseError(f"field {where} must be an object")
            recv = _expect(row, "recv", dict, where)
            for pred, sym in recv.items():
                if pred not in known:
                    raise ParseError(f"{where}.recv names an unknown node id {pred!r}")
                if not isinstance(sym, int):
                    raise ParseError(f"{where}.recv[{pred!r}] must be an integer symbol")
            nu = PartialInput.of({str(p): v for p, v in recv.items()})
            if nu in table:
                raise ParseError(f"{where} duplicates the row for received input {nu}")
            out = _expect(row, "out", int, where)
            table[nu] = out
            if "send" in row:
                send = row["send"]
                if not isinstance(send, list) or not all(isinstance(x, str) for x in send):
                    raise ParseError(f"{where}.send must be an array of node ids")
                for x in send:
                    if x not in known:
                        raise ParseError(f"{where}.send names an unknown node id {x!r}")
                rule[nu] = frozenset(send)
        programs[node] = table
        if rule:
            transmissions[node] = rule
    design = Design.build(layers, edges, programs, transmissions, alphabet)
    design_validate(design).raise_if_failed()
    return design


def serialize_design(design: Design) -> str:
    layers = []
    last = design.num_layers - 1
    for t, layer in enumerate(design.layers):
        layers.append(sorted(layer) if 0 < t < last else list(layer))
    behavior = {}
    for node in sorted(design.programs):
        table = design.programs[node]
        rule = design.transmissions.get(node, {})
        rows = []
        for nu in sorted(table, key=PartialInput.sort_key):
            row = {"recv": {p: v for p, v in nu.items}, "out": table[nu]}
            if nu in rule:
                row["send"] = sorted(rule[nu])
            rows.append(row)
        behavior[node] = rows
    doc = {
        "alphabet": design.alphabet.size,
        "layers": layers,
        "edges": [[a, b] for a, b in sorted(design.edges)],
        "behavior": behavior,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# games


def parse_game_file(text: str) -> tuple[NormalFormGame, LagMatrix | None]:
    doc = _load_json(text)
    players = _expect(doc, "players", int)
    counts = _expect(doc, "strategies", list)
    if len(counts) != players or not all(isinstance(c, int) for c in counts):
        raise ParseError(f"field strategies must be {players} integers")
    payoff_rows = _expect(doc, "payoffs", list)
    if len(payoff_rows) != players:
        raise ParseError(f"field payoffs must have one flat array per player ({players})")
    profiles = list(product(*(range(c) for c in counts)))
    payoffs = []
    for i, flat in enumerate(payoff_rows):
        if not isinstance(flat, list) or len(flat) != len(profiles):
            raise ParseError(
                f"field payoffs[{i}] must be a flat array of {len(profiles)} values in row-major profile order"
            )
        payoffs.append(
            {p: _parse_rational(v, f"payoffs[{i}][{j}]") for j, (p, v) in enumerate(zip(profiles, flat))}
        )
    game = NormalFormGame(tuple(counts), tuple(payoffs))
    lags = None
    if "lags" in doc:
        rows = doc["lags"]
        if not isinstance(rows, list) or len(rows) != players:
            raise ParseError(f"field lags must be a {players}x{players} matrix")
        lags = LagMatrix(tuple(tuple(_expect_int_list(row, f"lags[{i}]")) for i, row in enumerate(rows)))
    return game, lags


def _expect_int_list(row, where: str) -> list[int]:
    if not isinstance(row, list) or not all(isinstance(v, int) for v in row):
        raise ParseError(f"field {where} must be an array of integers")
    return row


def serialize_game(game: NormalFormGame, lags: LagMatrix | None = None) -> str:
    profiles = list(product(*(range(c) for c in game.strategy_counts)))
    doc = {
        "players": game.players,
        "strategies": list(game.strategy_counts),
        "payoffs": [
            [_rational_token(game.payoffs[i][p]) for p in profiles] for i in range(game.players)
        ],
    }
    if lags is not None:
        doc["lags"] = [list(row) for row in lags.lags]
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# DOT export


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(design: Design, s=None, domain=None) -> str:
    """Graphviz text: one rank per layer; with an input, active edges are
    solid, inactive dashed, and node labels carry the computed outputs."""
    trace = simulate(design, tuple(s), domain) if s is not None else None
    lines = ["digraph design {", "  rankdir=LR;", "  node [shape=box];"]
    for layer in design.layers:
        lines.append("  { rank=same; " + " ".join(_quote(n) + ";" for n in layer) + " }")
    if trace is not None:
        for layer in design.layers:
            for node in layer:
                label = f"{node} = {trace.outputs[node]}"
                lines.append(f"  {_quote(node)} [label={_quote(label)}];")
    for a, b in sorted(design.edges):
        style = ""
        if trace is not None:
            style = " [style=solid]" if (a, b) in trace.active_edges else " [style=dashed]"
        lines.append(f"  {_quote(a)} -> {_quote(b)}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
