"""Search for cost-minimal designs.

Exact bounded enumeration for micro instances, simulated annealing beyond,
approximate implementation (match a fraction of the domain), and optimal
coding of abstract machines.  Exact results are minimal within the stated
bounds only; nothing is claimed about unbounded designs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from random import Random
from typing import Iterator

from .costs import (
    CostReport,
    CostWeights,
    combined_cost,
    fixed_cost,
    programming_cost,
    variable_cost,
)
from .design import (
    Design,
    PartialInput,
    design_validate,
    implements,
    node_domains,
    simulate,
    trivial_design,
)
from .errors import (
    CandidateCapExceeded,
    LengthOverflow,
    NoImplementingDesignWithinBounds,
)
from .machine import AbstractMachine, Alphabet, Machine, Seq, encode


@dataclass(frozen=True)
class SearchBounds:
    """Finite slice of the design space: layer count, intermediate layer
    width, in-degree, and whether transmission rules are forced full."""

    t_max: int = 2
    m_max: int = 0
    p_max: int = 8
    full_transmission_only: bool = True

    def __post_init__(self):
        if self.t_max < 2:
            raise ValueError("t_max must be >= 2")
        if self.m_max < 0:
            raise ValueError("m_max must be >= 0")
        if self.p_max < 1:
            raise ValueError("p_max must be >= 1")


@dataclass(frozen=True)
class AnnealSchedule:
    """Geometric cooling; initial temperature defaults to the penalty scale."""

    iterations: int = 100_000
    initial_temperature: float | None = None
    final_temperature: float = 1e-3


@dataclass(frozen=True)
class SynthesisResult:
    best_design: Design
    best_cost: CostReport
    optimality: str  # "exact-within-bounds" | "heuristic"
    explored: int
    seed: int | None = None
    coverage: frozenset[Seq] | None = None


# ---------------------------------------------------------------------------
# bounded enumeration


def _check_general_gate(bounds: SearchBounds) -> None:
    if not bounds.full_transmission_only and (bounds.t_max > 3 or bounds.p_max > 2):
        raise ValueError("free transmission rules are only enumerable for t_max <= 3 and p_max <= 2")


def _profiles(n: int, bounds: SearchBounds):
    for t in range(2, bounds.t_max + 1):
        if t == 2:
            yield (n, n)
        else:
            for mids in product(range(1, bounds.m_max + 1), repeat=t - 2):
                yield (n, *mids, n)


def _layer_nodes(profile) -> tuple[tuple[str, ...], ...]:
    return tuple(tuple(f"{t}/{i}" for i in range(size)) for t, size in enumerate(profile, start=1))


def _edge_universe(layers) -> list[tuple[str, str]]:
    out = []
    for ls, src_layer in enumerate(layers[:-1]):
        for a in src_layer:
            for lt in range(ls + 1, len(layers)):
                for b in layers[lt]:
                    out.append((a, b))
    return out


def _topology_ok(layers, edges, bounds: SearchBounds) -> bool:
    indeg: dict[str, int] = {}
    outdeg: dict[str, int] = {}
    for a, b in edges:
        indeg[b] = indeg.get(b, 0) + 1
        outdeg[a] = outdeg.get(a, 0) + 1
    if any(v > bounds.p_max for v in indeg.values()):
        return False
    for mid in layers[1:-1]:
        for node in mid:
            if indeg.get(node, 0) == 0 or outdeg.get(node, 0) == 0:
                return False
    return True


def _intermediate_perm_maps(layers) -> list[dict[str, str]]:
    """Node renamings generated by permuting nodes within intermediate layers."""
    mids = [layer for layer in layers[1:-1] if len(layer) > 1]
    if not mids:
        return [{}]
    maps = []
    for combo in product(*(list(permutations(layer)) for layer in mids)):
        m: dict[str, str] = {}
        for layer, perm in zip(mids, combo):
            for a, b in zip(layer, perm):
                if a != b:
                    m[a] = b
        maps.append(m)
    return maps


def _canonical_topology(edges, perm_maps) -> list[dict[str, str]] | None:
    """None if a renamed copy of this edge set sorts earlier; otherwise the
    nontrivial renamings that fix it (used to deduplicate completed designs)."""
    base = tuple(sorted(edges))
    autos = []
    for m in perm_maps:
        if not m:
            continue
        mapped = tuple(sorted((m.get(a, a), m.get(b, b)) for a, b in edges))
        if mapped < base:
            return None
        if mapped == base:
            autos.append(m)
    return autos


def _design_key(design: Design):
    prog = tuple(
        sorted(
            (node, tuple(sorted((d.items, out) for d, out in table.items())))
            for node, table in design.programs.items()
        )
    )
    trans = tuple(
        sorted(
            (node, tuple(sorted((d.items, tuple(sorted(dst))) for d, dst in table.items())))
            for node, table in design.transmissions.items()
        )
    )
    return (design.layers, tuple(sorted(design.edges)), prog, trans)


def _relabel(design: Design, mapping: dict[str, str]) -> Design:
    def ren(x: str) -> str:
        return mapping.get(x, x)

    layers = []
    for t, layer in enumerate(design.layers):
        if 0 < t < design.num_layers - 1:
            layers.append(tuple(sorted(ren(x) for x in layer)))
        else:
            layers.append(tuple(ren(x) for x in layer))
    programs = {
        ren(node): {PartialInput.of({ren(p): v for p, v in d.items}): out for d, out in table.items()}
        for node, table in design.programs.items()
    }
    transmissions = {
        ren(node): {
            PartialInput.of({ren(p): v for p, v in d.items}): frozenset(ren(x) for x in dst)
            for d, dst in table.items()
        }
        for node, table in design.transmissions.items()
    }
    return Design(
        layers=tuple(layers),
        edges=frozenset((ren(a), ren(b)) for a, b in design.edges),
        programs=programs,
        transmissions=transmissions,
        alphabet=design.alphabet,
    )


def _is_orbit_min(design: Design, autos) -> bool:
    if not autos:
        return True
    key = _design_key(design)
    return all(_design_key(_relabel(design, m)) >= key for m in autos)


def _phi_options(dom, succs) -> Iterator[dict[PartialInput, frozenset[str]]]:
    """Every transmission table on dom whose union covers all successors."""
    succs = tuple(sorted(succs))
    subsets = [
        frozenset(s for i, s in enumerate(succs) if mask >> i & 1) for mask in range(2 ** len(succs))
    ]
    full = frozenset(succs)
    for choice in product(subsets, repeat=len(dom)):
        union = frozenset().union(*choice) if choice else frozenset()
        if union == full:
            yield dict(zip(dom, choice))


def _complete_designs(machine: Machine, layers, edges, autos, bounds: SearchBounds) -> Iterator[Design]:
    """Fill a fixed topology with all programs (and transmission rules when
    enabled), node by node in layer order, tracking reachable inputs."""
    domain = sorted(machine.domain)
    k = machine.alphabet.size
    succs: dict[str, list[str]] = {node: [] for layer in layers for node in layer}
    for a, b in edges:
        succs[a].append(b)
    for node in succs:
        succs[node].sort()
    order = [node for layer in layers[1:] for node in layer]
    received: dict[str, list[dict[str, int]]] = {node: [dict() for _ in domain] for node in order}
    for i, node in enumerate(layers[0]):
        for b in succs[node]:
            for si, s in enumerate(domain):
                received[b][si][node] = s[i]
    programs: dict[str, dict[PartialInput, int]] = {}
    transmissions: dict[str, dict[PartialInput, frozenset[str]]] = {}

    def emit() -> Design:
        return Design(
            layers=layers,
            edges=frozenset(edges),
            programs={node: dict(t) for node, t in programs.items()},
            transmissions={node: dict(t) for node, t in transmissions.items()},
            alphabet=machine.alphabet,
        )

    def rec(idx: int) -> Iterator[Design]:
        if idx == len(order):
            design = emit()
            if _is_orbit_min(design, autos):
                yield design
            return
        node = order[idx]
        nu_per_s = [PartialInput.of(received[node][si]) for si in range(len(domain))]
        dom = sorted(set(nu_per_s), key=PartialInput.sort_key)
        node_succs = succs[node]
        for outs in product(range(k), repeat=len(dom)):
            prog = dict(zip(dom, outs))
            programs[node] = prog
            if not node_succs:
                yield from rec(idx + 1)
                continue
            if bounds.full_transmission_only:
                phi_iter = [{nu: frozenset(node_succs) for nu in dom}]
            else:
                phi_iter = _phi_options(dom, node_succs)
            for phi in phi_iter:
                transmissions[node] = phi
                delivered = []
                for si, nu in enumerate(nu_per_s):
                    out = prog[nu]
                    for b in phi[nu]:
                        received[b][si][node] = out
                        delivered.append((b, si))
                yield from rec(idx + 1)
                for b, si in delivered:
                    del received[b][si][node]
                transmissions.pop(node)
        programs.pop(node, None)

    yield from rec(0)


def _candidate_stream(machine: Machine, bounds: SearchBounds, cardinality_prune=None) -> Iterator[Design]:
    _check_general_gate(bounds)
    for profile in _profiles(machine.n, bounds):
        layers = _layer_nodes(profile)
        universe = _edge_universe(layers)
        perm_maps = _intermediate_perm_maps(layers)
        for r in range(len(universe) + 1):
            if cardinality_prune is not None and cardinality_prune(r):
                break
            for combo in combinations(universe, r):
                if not _topology_ok(layers, combo, bounds):
                    continue
                autos = _canonical_topology(combo, perm_maps)
                if autos is None:
                    continue
                yield from _complete_designs(machine, layers, combo, autos, bounds)


def enumerate_designs(machine: Machine, bounds: SearchBounds) -> Iterator[Design]:
    """Every design within bounds, exactly once up to node renaming, in a
    deterministic order: layers small to large, topologies by edge count then
    lexicographic, programs and rules in lexicographic table order."""
    return _candidate_stream(machine, bounds)


# ---------------------------------------------------------------------------
# cost-minimal search


def _combined_value(design, machine, w: CostWeights, cp_mode, charge_presence, cp_exact_limit) -> Fraction:
    # Zero-weight components are skipped during search; the winner's full
    # report is computed once at the end.
    total = Fraction(0)
    if w.x:
        total += w.x * fixed_cost(design)
    if w.y:
        total += w.y * Fraction(variable_cost(design, machine))
    if w.z:
        cp, _ = programming_cost(
            design, machine, cp_mode, charge_presence=charge_presence, exact_limit=cp_exact_limit
        )
        total += w.z * Fraction(cp)
    return total


def _recheck(design: Design, machine: Machine, *, matched_at_least: int | None = None) -> None:
    report = design_validate(design, machine.domain)
    if not report.ok:
        raise AssertionError(f"search produced an invalid design: {report.errors}")
    if matched_at_least is None:
        if not implements(design, machine).ok:
            raise AssertionError("search produced a non-implementing design")
    elif len(_matched_inputs(design, machine)) < matched_at_least:
        raise AssertionError("search produced a design below the requested coverage")


def _matched_inputs(design: Design, machine: Machine) -> frozenset[Seq]:
    return frozenset(
        s for s in machine.domain if simulate(design, s).terminal_outputs == machine.entries[s]
    )


def _search_minimum(machine, weights, bounds, feasible, budget, cp_mode, charge_presence, cp_exact_limit):
    w = weights if isinstance(weights, CostWeights) else CostWeights.of(*weights)
    incumbent: tuple[Fraction, Design] | None = None
    explored = 0

    def prune(edge_count: int) -> bool:
        return incumbent is not None and w.x * edge_count > incumbent[0]

    for design in _candidate_stream(machine, bounds, cardinality_prune=prune):
        explored += 1
        if budget is not None and explored > budget:
            note = f"; best so far {incumbent[0]}" if incumbent else ""
            raise CandidateCapExceeded(f"candidate cap {budget} hit before exhausting bounds{note}")
        if not feasible(design):
            continue
        value = _combined_value(design, machine, w, cp_mode, charge_presence, cp_exact_limit)
        if incumbent is None or value < incumbent[0]:
            incumbent = (value, design)
    if incumbent is None:
        raise NoImplementingDesignWithinBounds(
            f"no design within {bounds} is feasible ({explored} candidates tried)"
        )
    return w, incumbent[1], explored


def kappa(
    machine: Machine,
    weights,
    bounds: SearchBounds,
    *,
    budget: int | None = None,
    cp_mode: str = "exact",
    charge_presence: bool = False,
    cp_exact_limit: int = 10,
) -> SynthesisResult:
    """Minimum combined cost over implementing designs within bounds.

    First minimum in enumeration order wins ties; topologies whose fixed-cost
    share already exceeds the incumbent are pruned.
    """
    w, best, explored = _search_minimum(
        machine,
        weights,
        bounds,
        lambda d: implements(d, machine).ok,
        budget,
        cp_mode,
        charge_presence,
        cp_exact_limit,
    )
    _recheck(best, machine)
    report = combined_cost(
        best, machine, w, cp_mode, charge_presence=charge_presence, exact_limit=cp_exact_limit
    )
    return SynthesisResult(best, report, "exact-within-bounds", explored)


def approximate_kappa(
    machine: Machine,
    weights,
    bounds: SearchBounds,
    coverage,
    *,
    budget: int | None = None,
    cp_mode: str = "exact",
    charge_presence: bool = False,
    cp_exact_limit: int = 10,
) -> SynthesisResult:
    """Like kappa, but a design is feasible when it matches the machine on at
    least ceil(q * |D|) inputs, every output symbol correct on those."""
    q = Fraction(coverage)
    if not 0 < q <= 1:
        raise ValueError(f"coverage must be in (0, 1], got {q}")
    threshold = math.ceil(q * len(machine.entries))
    w, best, explored = _search_minimum(
        machine,
        weights,
        bounds,
        lambda d: len(_matched_inputs(d, machine)) >= threshold,
        budget,
        cp_mode,
        charge_presence,
        cp_exact_limit,
    )
    _recheck(best, machine, matched_at_least=threshold)
    report = combined_cost(
        best, machine, w, cp_mode, charge_presence=charge_presence, exact_limit=cp_exact_limit
    )
    return SynthesisResult(
        best, report, "exact-within-bounds", explored, coverage=_matched_inputs(best, machine)
    )


# ---------------------------------------------------------------------------
# simulated annealing


def _mismatch_count(design: Design, machine: Machine) -> int:
    total = 0
    for s in machine.domain:
        got = simulate(design, s).terminal_outputs
        want = machine.entries[s]
        total += sum(1 for a, b in zip(got, want) if a != b)
    return total


def _fresh_node_id(layers) -> str:
    used = {node for layer in layers for node in layer}
    i = 0
    while f"m{i}" in used:
        i += 1
    return f"m{i}"


def _repair(layers, edges, old_programs, old_transmissions, machine: Machine, full_transmission: bool) -> Design:
    """Rebuild every table on the reachable domains after a structural edit:
    old entries survive where their key is still received, new program
    entries default to output 0, new rules default to full transmission, and
    any successor left uncovered is added back to every entry."""
    succs: dict[str, list[str]] = {node: [] for layer in layers for node in layer}
    for a, b in edges:
        succs[a].append(b)
    for node in succs:
        succs[node].sort()
    order = [node for layer in layers[1:] for node in layer]
    domain = sorted(machine.domain)
    received: dict[str, list[dict[str, int]]] = {node: [dict() for _ in domain] for node in order}
    for i, node in enumerate(layers[0]):
        for b in succs[node]:
            for si, s in enumerate(domain):
                received[b][si][node] = s[i]
    programs: dict[str, dict[PartialInput, int]] = {}
    transmissions: dict[str, dict[PartialInput, frozenset[str]]] = {}
    for node in order:
        nu_per_s = [PartialInput.of(received[node][si]) for si in range(len(domain))]
        dom = sorted(set(nu_per_s), key=PartialInput.sort_key)
        old_table = old_programs.get(node, {})
        prog = {nu: old_table.get(nu, 0) for nu in dom}
        programs[node] = prog
        if succs[node]:
            full = frozenset(succs[node])
            if full_transmission:
                phi = {nu: full for nu in dom}
            else:
                old_rule = old_transmissions.get(node, {})
                phi = {}
                for nu in dom:
                    old = old_rule.get(nu)
                    phi[nu] = full if old is None else frozenset(old) & full
                missing = full - frozenset().union(*phi.values())
                if missing:
                    phi = {nu: dst | missing for nu, dst in phi.items()}
            transmissions[node] = phi
            for si, nu in enumerate(nu_per_s):
                out = prog[nu]
                for b in phi[nu]:
                    received[b][si][node] = out
    return Design(
        layers=tuple(tuple(layer) for layer in layers),
        edges=frozenset(edges),
        programs=programs,
        transmissions=transmissions,
        alphabet=machine.alphabet,
    )


def _propose(rng: Random, design: Design, machine: Machine, bounds: SearchBounds) -> Design | None:
    k = design.alphabet.size
    domains = node_domains(design, machine.domain)
    layer_list = [list(layer) for layer in design.layers]
    t_count = design.num_layers
    indeg = {node: len(design.predecessors[node]) for node in design.layer_of}

    moves = []
    flippable = [n for n in design.programmed_nodes if domains[n]]
    if flippable and k >= 2:
        moves.append("flip")
    togglable = [
        n for n in design.programmed_nodes if design.successors[n] and domains[n]
    ]
    if togglable and not bounds.full_transmission_only:
        moves.append("toggle")
    addable = [
        (a, b)
        for a in sorted(design.layer_of)
        for b in sorted(design.layer_of)
        if design.layer_of[a] < design.layer_of[b]
        and b not in design.initial_nodes
        and (a, b) not in design.edges
        and indeg[b] < bounds.p_max
    ]
    if addable:
        moves.append("add_edge")
    if design.edges:
        moves.append("remove_edge")
    grow_layers = [t for t in range(2, t_count) if len(design.layers[t - 1]) < bounds.m_max]
    can_insert = t_count < bounds.t_max and bounds.m_max >= 1
    if grow_layers or can_insert:
        moves.append("add_node")
    removable = [node for layer in design.layers[1:-1] for node in layer]
    if removable:
        moves.append("remove_node")
    if not moves:
        return None

    move = rng.choice(moves)
    programs = {node: dict(t) for node, t in design.programs.items()}
    transmissions = {node: dict(t) for node, t in design.transmissions.items()}
    edges = set(design.edges)

    if move == "flip":
        node = rng.choice(flippable)
        nu = rng.choice(sorted(domains[node], key=PartialInput.sort_key))
        old = programs[node].get(nu, 0)
        programs[node][nu] = rng.choice([v for v in range(k) if v != old])
    elif move == "toggle":
        node = rng.choice(togglable)
        nu = rng.choice(sorted(domains[node], key=PartialInput.sort_key))
        b = rng.choice(sorted(design.successors[node]))
        current = transmissions.get(node, {}).get(nu, frozenset())
        transmissions.setdefault(node, {})[nu] = current ^ {b}
    elif move == "add_edge":
        edges.add(rng.choice(addable))
    elif move == "remove_edge":
        edges.discard(rng.choice(sorted(edges)))
    elif move == "add_node":
        options = [("grow", t) for t in grow_layers]
        if can_insert:
            options.extend(("insert", pos) for pos in range(2, t_count + 1))
        kind, pos = rng.choice(options)
        new_id = _fresh_node_id(layer_list)
        if kind == "grow":
            layer_list[pos - 1].append(new_id)
            pred_pool = [n for layer in layer_list[: pos - 1] for n in layer]
            succ_pool = [n for layer in layer_list[pos:] for n in layer if indeg[n] < bounds.p_max]
        else:
            layer_list.insert(pos - 1, [new_id])
            pred_pool = [n for layer in layer_list[: pos - 1] for n in layer]
            succ_pool = [n for layer in layer_list[pos:] for n in layer if indeg[n] < bounds.p_max]
        if not pred_pool or not succ_pool:
            return None
        edges.add((rng.choice(sorted(pred_pool)), new_id))
        edges.add((new_id, rng.choice(sorted(succ_pool))))
    else:  # remove_node
        node = rng.choice(removable)
        for layer in layer_list:
            if node in layer:
                layer.remove(node)
        layer_list = [layer for layer in layer_list if layer]
        edges = {(a, b) for a, b in edges if a != node and b != node}
        programs.pop(node, None)
        transmissions.pop(node, None)

    return _repair(layer_list, edges, programs, transmissions, machine, bounds.full_transmission_only)


def anneal(
    machine: Machine,
    weights,
    bounds: SearchBounds,
    seed: int = 0,
    schedule: AnnealSchedule | None = None,
    *,
    cp_mode: str = "exact",
    charge_presence: bool = False,
    cp_exact_limit: int = 10,
) -> SynthesisResult:
    """Simulated annealing from the trivial design.

    The walk minimizes combined cost plus a mismatch penalty large enough
    that any implementing design beats any non-implementing one; the result
    is the best implementing design seen, so it never costs more than the
    trivial design.  Deterministic for a fixed seed.
    """
    w = weights if isinstance(weights, CostWeights) else CostWeights.of(*weights)
    sched = schedule or AnnealSchedule()
    rng = Random(seed)

    def value(design) -> Fraction:
        return _combined_value(design, machine, w, cp_mode, charge_presence, cp_exact_limit)

    start = trivial_design(machine)
    start_value = value(start)
    lam = start_value + 1
    current, current_value, current_mismatch = start, start_value, 0
    current_obj = current_value
    best, best_value = start, start_value
    explored = 0

    t0 = sched.initial_temperature if sched.initial_temperature is not None else float(lam)
    t0 = max(t0, 1e-9)
    tf = min(max(sched.final_temperature, 1e-12), t0)
    steps = max(1, sched.iterations)
    ratio = (tf / t0) ** (1.0 / steps)
    temp = t0

    for _ in range(sched.iterations):
        temp *= ratio
        candidate = _propose(rng, current, machine, bounds)
        if candidate is None:
            continue
        explored += 1
        if not design_validate(candidate, machine.domain).ok:
            continue
        mismatch = _mismatch_count(candidate, machine)
        cand_value = value(candidate)
        cand_obj = cand_value + lam * mismatch
        delta = float(cand_obj - current_obj)
        if delta <= 0 or rng.random() < math.exp(max(-745.0, -delta / temp)):
            current, current_value, current_mismatch = candidate, cand_value, mismatch
            current_obj = cand_obj
            if mismatch == 0 and cand_value < best_value:
                best, best_value = candidate, cand_value
    _recheck(best, machine)
    report = combined_cost(
        best, machine, w, cp_mode, charge_presence=charge_presence, exact_limit=cp_exact_limit
    )
    return SynthesisResult(best, report, "heuristic", explored, seed=seed)


# ---------------------------------------------------------------------------
# optimal coding


def optimal_coding(
    abstract: AbstractMachine,
    n: int,
    k: int,
    weights,
    bounds: SearchBounds,
    *,
    budget: int | None = None,
    cp_mode: str = "exact",
    charge_presence: bool = False,
    cp_exact_limit: int = 10,
) -> tuple[dict[str, Seq], SynthesisResult]:
    """Minimize kappa over injective codings of the abstract machine.

    When input and output label sets are disjoint the first input's code is
    pinned to the all-zero sequence; combined cost is invariant under
    per-position symbol relabelings, so no minimum is lost.
    """
    alphabet = Alphabet(k)
    if k**n < len(abstract.inputs) or k**n < len(abstract.outputs):
        raise LengthOverflow(
            f"{k}^{n} sequences cannot code {len(abstract.inputs)} inputs and {len(abstract.outputs)} outputs"
        )
    seqs = sorted(product(range(k), repeat=n))
    in_set = set(abstract.inputs)
    out_set = set(abstract.outputs)
    labels = list(abstract.inputs) + [o for o in abstract.outputs if o not in in_set]
    fix_first = not (in_set & out_set)
    best: tuple[Fraction, dict[str, Seq], SynthesisResult] | None = None

    def assign(idx: int, coding: dict[str, Seq]) -> None:
        nonlocal best
        if idx == len(labels):
            machine = encode(abstract, coding, n, alphabet)
            try:
                result = kappa(
                    machine,
                    weights,
                    bounds,
                    budget=budget,
                    cp_mode=cp_mode,
                    charge_presence=charge_presence,
                    cp_exact_limit=cp_exact_limit,
                )
            except NoImplementingDesignWithinBounds:
                return
            if best is None or result.best_cost.combined < best[0]:
                best = (result.best_cost.combined, dict(coding), result)
            return
        label = labels[idx]
        options = [(0,) * n] if idx == 0 and fix_first else seqs
        for seq in options:
            if label in in_set and any(coding[l] == seq for l in coding if l in in_set):
                continue
            if label in out_set and any(coding[l] == seq for l in coding if l in out_set):
                continue
            coding[label] = seq
            assign(idx + 1, coding)
            del coding[label]

    assign(0, {})
    if best is None:
        raise NoImplementingDesignWithinBounds("no coding admits an implementing design within bounds")
    return best[1], best[2]
