"""Cost model: edge count, active-edge traffic, minimum inspection cost.

Programming cost charges each node for reading its received input term by
term.  Under the default knowledge model the set of transmitting
predecessors is observed for free and only symbol values cost inspections;
with charge_presence=True even discovering that a predecessor stayed silent
takes an inspection.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .design import Design, PartialInput, node_domains, simulate
from .errors import BadWeights, FanInTooLarge, MissingProgramEntry
from .machine import Machine

ABSENT = -1  # observation recorded when an inspected predecessor sent nothing

WEIGHT_SUM_TOL = Fraction(1, 10**9)


def _rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str, float)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise BadWeights(f"cannot interpret weight {value!r}") from exc
    raise BadWeights(f"cannot interpret weight {value!r}")


@dataclass(frozen=True)
class CostWeights:
    """Nonnegative weights (x, y, z) for fixed, variable and programming cost."""

    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self):
        vals = []
        for name in ("x", "y", "z"):
            f = _rational(getattr(self, name))
            if f < 0:
                raise BadWeights(f"weight {name} is negative: {f}")
            object.__setattr__(self, name, f)
            vals.append(f)
        total = sum(vals, Fraction(0))
        if abs(total - 1) > WEIGHT_SUM_TOL:
            raise BadWeights(f"weights must sum to 1, got {total}")

    @classmethod
    def of(cls, x, y, z) -> "CostWeights":
        return cls(_rational(x), _rational(y), _rational(z))


UNIFORM_WEIGHTS = CostWeights(Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))


@dataclass(frozen=True)
class DecisionTree:
    """One state of an adaptive inspection tree.

    known_index_set is the transmitting-predecessor set seen for free (None
    when presence must be discovered by inspecting); observed carries the
    (position, value) pairs inspected on the way here, with ABSENT marking a
    discovered silence.  Leaves name the determined output.
    """

    known_index_set: frozenset[str] | None
    observed: tuple[tuple[str, int], ...]
    inspect: str | None
    output: int | None
    children: tuple[tuple[int, "DecisionTree"], ...] = ()

    def walk(self, d: PartialInput) -> tuple[int, int]:
        """Number of inspections and resulting output for input d."""
        node, count = self, 0
        while node.inspect is not None:
            value = d.get(node.inspect, ABSENT)
            count += 1
            for v, child in node.children:
                if v == value:
                    node = child
                    break
            else:
                raise MissingProgramEntry(f"input {d} falls outside the policy tree")
        return count, node.output

    def height(self) -> int:
        if self.inspect is None:
            return 0
        return 1 + max(child.height() for _, child in self.children)


@dataclass(frozen=True)
class InspectionPolicy:
    """A certified inspection strategy for one node's program."""

    node: str | None
    exact: bool
    charge_presence: bool
    per_index_set: tuple[tuple[frozenset[str], DecisionTree], ...] | None
    combined_tree: DecisionTree | None

    def tree_for(self, d: PartialInput) -> DecisionTree:
        if self.charge_presence:
            return self.combined_tree
        want = d.index_set
        for key, tree in self.per_index_set:
            if key == want:
                return tree
        raise MissingProgramEntry(f"no policy tree for index set {sorted(want)}")

    def inspections(self, d: PartialInput) -> int:
        return self.tree_for(d).walk(d)[0]

    @property
    def depth(self) -> int:
        trees = [self.combined_tree] if self.charge_presence else [t for _, t in self.per_index_set]
        return max((t.height() for t in trees), default=0)


def _observe(d: PartialInput, p: str) -> int:
    v = d.get(p)
    return ABSENT if v is None else v


def _solve_exact(items, positions, program, known, observed=()):
    """Minimum weighted inspections via memoized search over knowledge states.

    A state is the set of inputs consistent with what was inspected; only
    positions that split the state are worth inspecting, so the state alone
    determines the optimum.
    """
    weights = dict(items)
    memo: dict[frozenset, tuple[int, str | None]] = {}

    def solve(group: frozenset) -> int:
        hit = memo.get(group)
        if hit is not None:
            return hit[0]
        outs = {program[d] for d in group}
        if len(outs) == 1:
            memo[group] = (0, None)
            return 0
        w = sum(weights[d] for d in group)
        best, best_p = None, None
        for p in positions:
            buckets: dict[int, list] = {}
            for d in group:
                buckets.setdefault(_observe(d, p), []).append(d)
            if len(buckets) < 2:
                continue
            cost = w + sum(solve(frozenset(b)) for b in buckets.values())
            if best is None or cost < best:
                best, best_p = cost, p
        memo[group] = (best, best_p)
        return best

    def rebuild(group: frozenset, path) -> DecisionTree:
        _, p = memo[frozenset(group)]
        if p is None:
            out = program[next(iter(group))]
            return DecisionTree(known, path, None, out)
        buckets: dict[int, list] = {}
        for d in group:
            buckets.setdefault(_observe(d, p), []).append(d)
        children = tuple(
            (v, rebuild(frozenset(buckets[v]), path + ((p, v),))) for v in sorted(buckets)
        )
        return DecisionTree(known, path, p, None, children)

    everything = frozenset(d for d, _ in items)
    total = solve(everything)
    return total, rebuild(everything, observed)


def _solve_greedy(items, positions, program, known, observed=()):
    """Upper bound: repeatedly inspect the position that settles the most
    weight, ties broken by the lowest position id."""
    weights = dict(items)

    def build(group, path):
        outs = {program[d] for d in group}
        if len(outs) == 1:
            return 0, DecisionTree(known, path, None, program[next(iter(group))])
        best_p, best_score, best_buckets = None, -1, None
        for p in positions:
            buckets: dict[int, list] = {}
            for d in group:
                buckets.setdefault(_observe(d, p), []).append(d)
            if len(buckets) < 2:
                continue
            score = sum(
                sum(weights[d] for d in b)
                for b in buckets.values()
                if len({program[d] for d in b}) == 1
            )
            if score > best_score:
                best_p, best_score, best_buckets = p, score, buckets
        cost = sum(weights[d] for d in group)
        children = []
        for v in sorted(best_buckets):
            sub_cost, sub_tree = build(best_buckets[v], path + ((best_p, v),))
            cost += sub_cost
            children.append((v, sub_tree))
        return cost, DecisionTree(known, path, best_p, None, tuple(children))

    return build([d for d, _ in items], observed)


def node_programming_cost(
    domain: Mapping[PartialInput, int],
    program: Mapping[PartialInput, int],
    mode: str = "exact",
    *,
    charge_presence: bool = False,
    exact_limit: int = 10,
    node: str | None = None,
) -> tuple[int, InspectionPolicy]:
    """Cost of determining the program output on every reachable input.

    domain maps each reachable partial input to its multiplicity; the cost is
    the (exact minimum or greedy upper bound of the) total weighted number of
    inspections.  Exact mode refuses fan-in beyond exact_limit.
    """
    if mode not in ("exact", "heuristic"):
        raise ValueError(f"unknown mode {mode!r}")
    items = sorted(domain.items(), key=lambda kv: kv[0].sort_key())
    for d, _ in items:
        if d not in program:
            raise MissingProgramEntry(f"program has no entry for domain input {d}")
    fan_in = sorted({p for d, _ in items for p in d.index_set})
    if mode == "exact" and len(fan_in) > exact_limit:
        raise FanInTooLarge(
            f"effective fan-in {len(fan_in)} exceeds the exact-mode limit {exact_limit}"
        )
    solver = _solve_exact if mode == "exact" else _solve_greedy

    if charge_presence:
        total, tree = solver(items, tuple(fan_in), program, None)
        policy = InspectionPolicy(node, mode == "exact", True, None, tree)
        return total, policy

    groups: dict[frozenset[str], list] = {}
    for d, w in items:
        groups.setdefault(d.index_set, []).append((d, w))
    total = 0
    trees = []
    for key in sorted(groups, key=lambda v: (len(v), tuple(sorted(v)))):
        cost, tree = solver(groups[key], tuple(sorted(key)), program, key)
        total += cost
        trees.append((key, tree))
    policy = InspectionPolicy(node, mode == "exact", False, tuple(trees), None)
    return total, policy


def fixed_cost(design: Design) -> int:
    """Number of edges: one unit of set-up cost per information route."""
    return len(design.edges)


def variable_cost(design: Design, machine: Machine):
    """Total active-edge traffic over the domain.

    Uniform case: the plain sum of active-edge counts (an integer).  With
    frequencies: |D| times the probability-weighted sum, so uniform
    frequencies reproduce the unweighted value exactly.
    """
    total = 0
    weighted = Fraction(0)
    for s in sorted(machine.domain):
        sigma = simulate(design, s).active_count
        total += sigma
        if machine.frequencies is not None:
            weighted += machine.frequencies[s] * sigma
    if machine.frequencies is None:
        return total
    return len(machine.entries) * weighted


def programming_cost(
    design: Design,
    machine: Machine,
    mode: str = "exact",
    *,
    charge_presence: bool = False,
    exact_limit: int = 10,
) -> tuple[int, dict[str, tuple[int, InspectionPolicy]]]:
    """Sum of per-node inspection costs; the minimization separates over
    nodes, so per-node optimization is exact."""
    domains = node_domains(design, machine.domain)
    per_node: dict[str, tuple[int, InspectionPolicy]] = {}
    total = 0
    for node in design.programmed_nodes:
        cost, policy = node_programming_cost(
            domains[node],
            design.programs[node],
            mode,
            charge_presence=charge_presence,
            exact_limit=exact_limit,
            node=node,
        )
        per_node[node] = (cost, policy)
        total += cost
    return total, per_node


@dataclass(frozen=True)
class NodeCost:
    in_degree: int
    programming: int
    policy: InspectionPolicy


@dataclass(frozen=True)
class CostReport:
    c_f: int
    c_v: Fraction | int
    c_p: Fraction | int
    combined: Fraction
    weights: CostWeights
    per_node: dict[str, NodeCost]


def combined_cost(
    design: Design,
    machine: Machine,
    weights,
    mode: str = "exact",
    *,
    charge_presence: bool = False,
    exact_limit: int = 10,
) -> CostReport:
    """Exact rational combination x*c_F + y*c_V + z*c_P with per-node detail."""
    w = weights if isinstance(weights, CostWeights) else CostWeights.of(*weights)
    c_f = fixed_cost(design)
    c_v = variable_cost(design, machine)
    c_p, per_node_cp = programming_cost(
        design, machine, mode, charge_presence=charge_presence, exact_limit=exact_limit
    )
    combined = w.x * c_f + w.y * Fraction(c_v) + w.z * Fraction(c_p)
    per_node = {
        node: NodeCost(len(design.predecessors[node]), cost, policy)
        for node, (cost, policy) in per_node_cp.items()
    }
    return CostReport(c_f, c_v, c_p, combined, w, per_node)
