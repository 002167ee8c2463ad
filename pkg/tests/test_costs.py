import random
from fractions import Fraction
from itertools import product

import pytest

from decent import (
    BadWeights,
    CostWeights,
    FanInTooLarge,
    MissingProgramEntry,
    PartialInput,
    combined_cost,
    fixed_cost,
    node_programming_cost,
    programming_cost,
    trivial_design,
    variable_cost,
)

import oracles
import util


def P(mapping=None):
    return PartialInput.of(mapping or {})


def full_domain_2bit():
    return {P({"a": x, "b": y}): 1 for x in (0, 1) for y in (0, 1)}


AND_PROGRAM = {P({"a": x, "b": y}): x & y for x in (0, 1) for y in (0, 1)}
XOR_PROGRAM = {P({"a": x, "b": y}): x ^ y for x in (0, 1) for y in (0, 1)}


def test_and_costs_six():
    cost, policy = node_programming_cost(full_domain_2bit(), AND_PROGRAM)
    assert cost == 6
    assert cost == oracles.min_inspection_cost(full_domain_2bit(), AND_PROGRAM)
    assert policy.exact


def test_xor_costs_eight():
    cost, policy = node_programming_cost(full_domain_2bit(), XOR_PROGRAM)
    assert cost == 8
    assert cost == oracles.min_inspection_cost(full_domain_2bit(), XOR_PROGRAM)
    assert policy.depth == 2


def test_constant_program_costs_zero():
    domain = full_domain_2bit()
    cost, policy = node_programming_cost(domain, {d: 1 for d in domain})
    assert cost == 0
    assert policy.depth == 0
    # the empty input also needs zero inspections
    cost, _ = node_programming_cost({P(): 7}, {P(): 1})
    assert cost == 0


def test_multiplicities_weight_the_minimizer():
    # heavy weight on input (1,1) makes inspecting "b" first cheaper:
    # b=0 settles two light inputs, b=1 leaves {10?} no... weights decide.
    domain = {
        P({"a": 0, "b": 0}): 1,
        P({"a": 0, "b": 1}): 1,
        P({"a": 1, "b": 0}): 1,
        P({"a": 1, "b": 1}): 5,
    }
    cost, _ = node_programming_cost(domain, AND_PROGRAM)
    assert cost == oracles.min_inspection_cost(domain, AND_PROGRAM)


def test_free_index_set_vs_charged_presence():
    domain = {P(): 1, P({"a": 1}): 1}
    program = {P(): 0, P({"a": 1}): 1}
    free, _ = node_programming_cost(domain, program)
    charged, policy = node_programming_cost(domain, program, charge_presence=True)
    assert free == 0  # each index set admits one input only
    assert charged == 2  # both inputs must inspect "a" to learn its status
    assert charged == oracles.min_inspection_cost(domain, program, charge_presence=True)
    assert policy.charge_presence


def test_program_must_cover_domain():
    with pytest.raises(MissingProgramEntry):
        node_programming_cost({P({"a": 0}): 1}, {P({"a": 1}): 0})


def test_fan_in_gate():
    domain = {P({"a": x, "b": y, "c": z}): 1 for x in (0, 1) for y in (0, 1) for z in (0, 1)}
    program = {d: d.get("a") for d in domain}
    with pytest.raises(FanInTooLarge):
        node_programming_cost(domain, program, exact_limit=2)
    cost, policy = node_programming_cost(domain, program, "heuristic", exact_limit=2)
    assert not policy.exact
    assert cost == 8  # greedy picks "a" immediately: 1 inspection each


def test_heuristic_never_beats_exact():
    rng = random.Random(7)
    positions = ["a", "b", "c"]
    for _ in range(60):
        pool = [
            PartialInput.of({p: rng.randrange(2) for p in rng.sample(positions, rng.randint(0, 3))})
            for _ in range(rng.randint(1, 10))
        ]
        domain = {d: rng.randint(1, 3) for d in set(pool)}
        program = {d: rng.randrange(2) for d in domain}
        exact, exact_policy = node_programming_cost(domain, program)
        greedy, greedy_policy = node_programming_cost(domain, program, "heuristic")
        assert exact <= greedy
        for d, w in domain.items():
            assert 0 <= exact_policy.inspections(d) <= len(d)
            assert 0 <= greedy_policy.inspections(d) <= len(d)


def test_policy_beta_reconstructs_cost():
    domain = full_domain_2bit()
    for program in (AND_PROGRAM, XOR_PROGRAM):
        cost, policy = node_programming_cost(domain, program)
        assert cost == sum(w * policy.inspections(d) for d, w in domain.items())


def test_policy_paths_inspect_each_position_once():
    def check(tree, seen):
        if tree.inspect is None:
            return
        assert tree.inspect not in seen
        for _, child in tree.children:
            check(child, seen | {tree.inspect})

    _, policy = node_programming_cost(full_domain_2bit(), XOR_PROGRAM)
    for _, tree in policy.per_index_set:
        check(tree, set())


def test_policy_leaves_are_consistent():
    domain = full_domain_2bit()
    _, policy = node_programming_cost(domain, AND_PROGRAM)
    for d in domain:
        _, out = policy.tree_for(d).walk(d)
        assert out == AND_PROGRAM[d]


def test_fixed_cost_examples(id2, sel1):
    assert fixed_cost(trivial_design(id2)) == 4
    assert fixed_cost(sel1) == 2
    assert fixed_cost(util.zero_edge_const2()) == 0


def test_fixed_cost_equals_sum_of_in_degrees(id2, sel1):
    for design in (trivial_design(id2), sel1):
        assert fixed_cost(design) == sum(len(design.predecessors[n]) for n in design.layer_of)


def test_variable_cost_examples(id2, sel1, m1):
    assert variable_cost(trivial_design(id2), id2) == 16
    assert variable_cost(sel1, m1) == 3


def test_variable_cost_weighted(sel1):
    m1w = util.machine_of(1, 2, {"0": "0", "1": "1"}, freq=["0.25", "0.75"])
    assert variable_cost(sel1, m1w) == Fraction(7, 2)
    uniform = util.machine_of(1, 2, {"0": "0", "1": "1"}, freq=["1/2", "1/2"])
    assert variable_cost(sel1, uniform) == 3


def test_full_transmission_makes_cv_saturate(id2):
    td = trivial_design(id2)
    assert variable_cost(td, id2) == len(id2.entries) * fixed_cost(td)


def test_programming_cost_trivial_and_or(and_or):
    total, per_node = programming_cost(trivial_design(and_or), and_or)
    assert total == 12
    assert per_node["2/0"][0] == 6 and per_node["2/1"][0] == 6


def test_programming_cost_sel1(sel1, m1):
    total, per_node = programming_cost(sel1, m1)
    assert total == 2
    assert per_node["alpha"][0] == 2 and per_node["tau"][0] == 0


def test_programming_cost_zero_edge(const2):
    total, _ = programming_cost(util.zero_edge_const2(), const2)
    assert total == 0


def test_combined_cost_weight_projection(sel1, m1):
    report = combined_cost(sel1, m1, ("1", "0", "0"))
    assert report.combined == report.c_f == 2


def test_combined_cost_sel1(sel1, m1):
    report = combined_cost(sel1, m1, ("1/3", "1/3", "1/3"))
    assert (report.c_f, report.c_v, report.c_p) == (2, 3, 2)
    assert report.combined == Fraction(7, 3)
    assert report.per_node["alpha"].in_degree == 1


def test_combined_cost_is_affine_in_weights(sel1, m1):
    for weights in (("1/2", "1/4", "1/4"), ("0", "1/2", "1/2"), ("0.2", "0.3", "0.5")):
        report = combined_cost(sel1, m1, weights)
        w = report.weights
        assert report.combined == w.x * report.c_f + w.y * report.c_v + w.z * report.c_p


def test_bad_weights():
    with pytest.raises(BadWeights):
        CostWeights.of("0.5", "0.5", "0.5")
    with pytest.raises(BadWeights):
        CostWeights.of("-1", "1", "1")
    with pytest.raises(BadWeights):
        combined_cost(util.sel1(), util.m1(), (0.5, 0.5, 0.5))
    # within tolerance is fine
    CostWeights.of(0.1, 0.2, 0.7)


def test_sigma_bounded_by_cf(id2, sel1, m1):
    from decent import simulate

    for design, machine in ((trivial_design(id2), id2), (sel1, m1)):
        cf = fixed_cost(design)
        for s in machine.domain:
            assert 0 <= simulate(design, s).active_count <= cf


def test_exact_matches_oracle_with_partial_index_sets():
    rng = random.Random(99)
    positions = ["a", "b", "c"]
    # sample domains mixing full and partial index sets, both knowledge models
    for _ in range(80):
        pool = [
            PartialInput.of({p: rng.randrange(2) for p in rng.sample(positions, rng.randint(0, 3))})
            for _ in range(rng.randint(1, 12))
        ]
        domain = {d: rng.randint(1, 4) for d in set(pool)}
        program = {d: rng.randrange(2) for d in domain}
        for charged in (False, True):
            got, _ = node_programming_cost(domain, program, charge_presence=charged)
            assert got == oracles.min_inspection_cost(domain, program, charge_presence=charged)
