"""Layered designs of elementary machines: structure, simulation, domains.

A design is a layered DAG.  Layer-1 nodes are dummies that emit the input
symbols; every later node applies a program to the partial input it received
and forwards its output along a transmission rule.  Initial nodes carry no
program or rule: they broadcast to all their successors on every input, and
those edges are always active.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import (
    InputNotInDomain,
    MissingProgramEntry,
    ShapeMismatch,
    ValidationError,
    Violation,
)
from .machine import Alphabet, Machine, Seq


@dataclass(frozen=True)
class PartialInput:
    """Symbols received by a node, indexed by the predecessors that sent them.

    The empty instance stands for the empty sequence: nothing arrived.
    Hashable and canonically ordered, so it can key program tables.
    """

    items: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        items = tuple(sorted(self.items))
        keys = [k for k, _ in items]
        if len(set(keys)) != len(keys):
            raise ValueError(f"duplicate predecessor in partial input: {items}")
        object.__setattr__(self, "items", items)

    @classmethod
    def of(cls, assignments: Mapping[str, int] | Iterable[tuple[str, int]] = ()) -> "PartialInput":
        if isinstance(assignments, Mapping):
            return cls(tuple(assignments.items()))
        return cls(tuple(assignments))

    @property
    def index_set(self) -> frozenset[str]:
        return frozenset(k for k, _ in self.items)

    def get(self, pred: str, default=None):
        for k, v in self.items:
            if k == pred:
                return v
        return default

    def as_dict(self) -> dict[str, int]:
        return dict(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def sort_key(self):
        return (len(self.items), self.items)

    def __str__(self) -> str:
        if not self.items:
            return "(empty)"
        return ",".join(f"{k}={v}" for k, v in self.items)


EMPTY = PartialInput(())


def _as_partial(key) -> PartialInput:
    if isinstance(key, PartialInput):
        return key
    if isinstance(key, Mapping):
        return PartialInput.of(key)
    return PartialInput(tuple(key))


@dataclass(frozen=True)
class Design:
    """Layers, forward edges, per-node programs and transmission rules.

    Immutable after validation; `simulate` and `node_domains` are pure, so
    many (design, input) pairs may be evaluated concurrently.
    """

    layers: tuple[tuple[str, ...], ...]
    edges: frozenset[tuple[str, str]]
    programs: dict[str, dict[PartialInput, int]]
    transmissions: dict[str, dict[PartialInput, frozenset[str]]]
    alphabet: Alphabet

    @classmethod
    def build(cls, layers, edges, programs, transmissions, alphabet) -> "Design":
        """Normalize plain containers into the canonical field types."""
        progs = {
            node: {_as_partial(key): int(v) for key, v in table.items()}
            for node, table in programs.items()
        }
        trans = {
            node: {_as_partial(key): frozenset(dst) for key, dst in table.items()}
            for node, table in transmissions.items()
        }
        return cls(
            layers=tuple(tuple(layer) for layer in layers),
            edges=frozenset((a, b) for a, b in edges),
            programs=progs,
            transmissions=trans,
            alphabet=alphabet if isinstance(alphabet, Alphabet) else Alphabet(alphabet),
        )

    @property
    def n(self) -> int:
        return len(self.layers[0])

    @property
    def num_layers(self) -> int:
        return len(self.layers)

    @property
    def initial_nodes(self) -> tuple[str, ...]:
        return self.layers[0]

    @property
    def terminal_nodes(self) -> tuple[str, ...]:
        return self.layers[-1]

    @property
    def programmed_nodes(self) -> tuple[str, ...]:
        """Every non-initial node, in layer order; these carry programs."""
        return tuple(node for layer in self.layers[1:] for node in layer)

    @cached_property
    def layer_of(self) -> dict[str, int]:
        return {node: t for t, layer in enumerate(self.layers, start=1) for node in layer}

    @cached_property
    def predecessors(self) -> dict[str, tuple[str, ...]]:
        pred: dict[str, list[str]] = {node: [] for node in self.layer_of}
        for a, b in self.edges:
            if b in pred:
                pred[b].append(a)
        return {node: tuple(sorted(v)) for node, v in pred.items()}

    @cached_property
    def successors(self) -> dict[str, tuple[str, ...]]:
        succ: dict[str, list[str]] = {node: [] for node in self.layer_of}
        for a, b in self.edges:
            if a in succ:
                succ[a].append(b)
        return {node: tuple(sorted(v)) for node, v in succ.items()}


@dataclass(frozen=True)
class Trace:
    """One simulation run: every node's output plus the edges that fired."""

    input: Seq
    outputs: dict[str, int]
    received: dict[str, PartialInput]
    active_edges: frozenset[tuple[str, str]]
    terminal_outputs: Seq

    @property
    def active_count(self) -> int:
        return len(self.active_edges)


@dataclass
class ValidationReport:
    ok: bool
    errors: list[Violation]
    warnings: list[Violation]
    domains: dict[str, dict[PartialInput, int]] | None = None

    def raise_if_failed(self) -> None:
        if not self.ok:
            raise ValidationError(self.errors)


def design_validate(design: Design, machine_domain=None) -> ValidationReport:
    """Check the structural rules of a design; with a machine domain, also
    derive reachable node domains and check program totality on them.

    Program or transmission entries outside the reachable domain are
    warnings; missing entries on it are errors.
    """
    errors: list[Violation] = []
    warnings: list[Violation] = []

    if design.num_layers < 2:
        errors.append(Violation("LayerSizeMismatch", "a design needs at least 2 layers"))
    for t, layer in enumerate(design.layers, start=1):
        if not layer:
            errors.append(Violation("LayerSizeMismatch", f"layer {t} is empty"))
    if design.layers and len(design.layers[0]) != len(design.layers[-1]):
        errors.append(
            Violation(
                "LayerSizeMismatch",
                f"initial layer has {len(design.layers[0])} nodes, terminal layer has {len(design.layers[-1])}",
            )
        )
    seen: set[str] = set()
    for layer in design.layers:
        for node in layer:
            if node in seen:
                errors.append(Violation("DuplicateNode", f"node id {node!r} appears twice", node))
            seen.add(node)
    for a, b in sorted(design.edges):
        if a not in seen or b not in seen:
            errors.append(Violation("UnknownNode", f"edge ({a},{b}) references an unknown node", f"{a}->{b}"))
        elif design.layer_of[a] >= design.layer_of[b]:
            errors.append(Violation("BackwardEdge", f"edge ({a},{b}) does not point forward in time", f"{a}->{b}"))
    if errors:
        return ValidationReport(False, errors, warnings)

    for t in range(2, design.num_layers):
        for node in design.layers[t - 1]:
            if not design.predecessors[node]:
                errors.append(Violation("EmptyIntermediatePredecessors", f"intermediate node {node} has no predecessors", node))
            if not design.successors[node]:
                errors.append(Violation("EmptyIntermediateSuccessors", f"intermediate node {node} has no successors", node))

    for node in design.initial_nodes:
        if node in design.programs:
            errors.append(Violation("UnexpectedProgram", f"initial node {node} cannot carry a program", node))
        if node in design.transmissions:
            errors.append(Violation("UnexpectedTransmission", f"initial node {node} broadcasts; it takes no rule", node))

    k = design.alphabet.size
    for node in design.programmed_nodes:
        preds = set(design.predecessors[node])
        succs = set(design.successors[node])
        table = design.programs.get(node)
        if table is None:
            errors.append(Violation("MissingProgramEntry", f"node {node} has no program table", node))
        else:
            for nu, out in table.items():
                if not nu.index_set <= preds:
                    errors.append(Violation("UnknownPredecessor", f"program row {nu} names a non-predecessor", node))
                if not isinstance(out, int) or not 0 <= out < k:
                    errors.append(Violation("SymbolOutOfRange", f"program output {out!r} not in 0..{k - 1}", node))
        rule = design.transmissions.get(node)
        if succs:
            if rule is None:
                errors.append(Violation("MissingTransmissionEntry", f"node {node} has successors but no transmission rule", node))
            else:
                for nu, dst in rule.items():
                    if not nu.index_set <= preds:
                        errors.append(Violation("UnknownPredecessor", f"transmission row {nu} names a non-predecessor", node))
                    if not set(dst) <= succs:
                        errors.append(Violation("UnknownSuccessor", f"transmission row {nu} sends outside the successor set", node))
        elif rule:
            errors.append(Violation("UnexpectedTransmission", f"node {node} has no successors but carries a rule", node))
    if errors:
        return ValidationReport(False, errors, warnings)

    if machine_domain is None:
        # Without a domain we can still spot successors that no rule ever names.
        for node in design.programmed_nodes:
            rule = design.transmissions.get(node)
            if rule is not None and design.successors[node]:
                named = frozenset().union(*rule.values()) if rule else frozenset()
                for b in sorted(set(design.successors[node]) - named):
                    errors.append(Violation("IrrelevantSuccessor", f"edge ({node},{b}) is never used by the rule", node))
        return ValidationReport(not errors, errors, warnings)

    domain = sorted(tuple(s) for s in machine_domain)
    for s in domain:
        if len(s) != design.n or not design.alphabet.contains_seq(s):
            errors.append(Violation("BadDomain", f"domain sequence {s} does not fit n={design.n}, k={k}"))
    if errors:
        return ValidationReport(False, errors, warnings)

    domains: dict[str, dict[PartialInput, int]] = {node: {} for node in design.programmed_nodes}
    missing_prog: set[tuple[str, PartialInput]] = set()
    missing_rule: set[tuple[str, PartialInput]] = set()
    for s in domain:
        received: dict[str, dict[str, int]] = {node: {} for node in design.programmed_nodes}
        for i, node in enumerate(design.initial_nodes):
            for b in design.successors[node]:
                received[b][node] = s[i]
        for layer in design.layers[1:]:
            for node in layer:
                nu = PartialInput.of(received[node])
                counts = domains[node]
                counts[nu] = counts.get(nu, 0) + 1
                out = design.programs[node].get(nu)
                if out is None:
                    missing_prog.add((node, nu))
                    continue  # treat as silent so discovery can go on
                if design.successors[node]:
                    dst = design.transmissions[node].get(nu)
                    if dst is None:
                        missing_rule.add((node, nu))
                        continue
                    for b in dst:
                        received[b][node] = out
    for node, nu in sorted(missing_prog, key=lambda p: (p[0], p[1].sort_key())):
        errors.append(Violation("MissingProgramEntry", f"no program entry for reachable input {nu}", node))
    for node, nu in sorted(missing_rule, key=lambda p: (p[0], p[1].sort_key())):
        errors.append(Violation("MissingTransmissionEntry", f"no transmission entry for reachable input {nu}", node))

    for node in design.programmed_nodes:
        reach = domains[node]
        for nu in sorted(set(design.programs[node]) - set(reach), key=PartialInput.sort_key):
            warnings.append(Violation("UnreachableProgramEntry", f"program entry {nu} can never be received", node))
        rule = design.transmissions.get(node)
        if rule is not None and design.successors[node]:
            for nu in sorted(set(rule) - set(reach), key=PartialInput.sort_key):
                warnings.append(Violation("UnreachableTransmissionEntry", f"transmission entry {nu} can never be received", node))
            named = frozenset()
            for nu in reach:
                named |= rule.get(nu, frozenset())
            for b in sorted(set(design.successors[node]) - named):
                errors.append(Violation("IrrelevantSuccessor", f"edge ({node},{b}) is never used on reachable inputs", node))

    ok = not errors
    return ValidationReport(ok, errors, warnings, domains if ok else None)


def simulate(design: Design, s, domain=None) -> Trace:
    """Run one input through a validated design and return the full trace.

    Initial nodes broadcast to all successors; an edge is active exactly when
    a symbol actually travels over it.
    """
    s = tuple(s)
    if len(s) != design.n or not design.alphabet.contains_seq(s):
        raise InputNotInDomain(f"input {s} does not fit n={design.n}, k={design.alphabet.size}")
    if domain is not None and s not in {tuple(d) for d in domain}:
        raise InputNotInDomain(f"input {s} is not in the machine domain")

    received: dict[str, dict[str, int]] = {node: {} for node in design.programmed_nodes}
    outputs: dict[str, int] = {}
    active: set[tuple[str, str]] = set()
    for i, node in enumerate(design.initial_nodes):
        outputs[node] = s[i]
        for b in design.successors[node]:
            received[b][node] = s[i]
            active.add((node, b))
    rec_final: dict[str, PartialInput] = {}
    for layer in design.layers[1:]:
        for node in layer:
            nu = PartialInput.of(received[node])
            rec_final[node] = nu
            table = design.programs.get(node)
            if table is None or nu not in table:
                raise MissingProgramEntry(f"node {node} has no program entry for received input {nu}")
            out = table[nu]
            outputs[node] = out
            if design.successors[node]:
                rule = design.transmissions.get(node)
                if rule is None or nu not in rule:
                    raise MissingProgramEntry(f"node {node} has no transmission entry for received input {nu}")
                for b in rule[nu]:
                    received[b][node] = out
                    active.add((node, b))
    terminals = tuple(outputs[node] for node in design.terminal_nodes)
    return Trace(s, outputs, rec_final, frozenset(active), terminals)


def node_domains(design: Design, machine_domain) -> dict[str, dict[PartialInput, int]]:
    """Reachable partial inputs per node with multiplicities over the domain."""
    domains: dict[str, dict[PartialInput, int]] = {node: {} for node in design.programmed_nodes}
    for s in sorted(tuple(x) for x in machine_domain):
        trace = simulate(design, s)
        for node, nu in trace.received.items():
            counts = domains[node]
            counts[nu] = counts.get(nu, 0) + 1
    return domains


@dataclass(frozen=True)
class ImplementsReport:
    ok: bool
    counterexamples: tuple[tuple[Seq, tuple[int, ...]], ...]


def implements(design: Design, machine: Machine) -> ImplementsReport:
    """Does every terminal node reproduce the machine's component on all of D?

    Terminal ordering is the declared order of the last layer.  Mismatch
    positions in counterexamples are 0-based.
    """
    if design.n != machine.n or design.alphabet != machine.alphabet:
        raise ShapeMismatch(
            f"design (n={design.n}, k={design.alphabet.size}) does not fit "
            f"machine (n={machine.n}, k={machine.alphabet.size})"
        )
    bad = []
    for s in sorted(machine.domain):
        got = simulate(design, s).terminal_outputs
        want = machine.entries[s]
        mismatches = tuple(i for i in range(machine.n) if got[i] != want[i])
        if mismatches:
            bad.append((s, mismatches))
    return ImplementsReport(not bad, tuple(bad))


def trivial_design(machine: Machine) -> Design:
    """The always-available two-layer design: full bipartite wiring, each
    terminal computing its component from the whole input."""
    n = machine.n
    ins = tuple(f"1/{i}" for i in range(n))
    outs = tuple(f"2/{j}" for j in range(n))
    programs: dict[str, dict[PartialInput, int]] = {}
    for j, tau in enumerate(outs):
        table: dict[PartialInput, int] = {}
        for s, out in machine.entries.items():
            nu = PartialInput.of({ins[i]: s[i] for i in range(n)})
            table[nu] = out[j]
        programs[tau] = table
    return Design(
        layers=(ins, outs),
        edges=frozenset((a, b) for a in ins for b in outs),
        programs=programs,
        transmissions={},
        alphabet=machine.alphabet,
    )
