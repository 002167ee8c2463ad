import random
from fractions import Fraction

import pytest

from decent import (
    AbstractMachine,
    AnnealSchedule,
    CandidateCapExceeded,
    LengthOverflow,
    NoImplementingDesignWithinBounds,
    SearchBounds,
    UNIFORM_WEIGHTS,
    anneal,
    approximate_kappa,
    combined_cost,
    design_validate,
    encode,
    enumerate_designs,
    implements,
    kappa,
    machine_validate,
    optimal_coding,
    trivial_design,
)
from decent.machine import Alphabet
from decent.synthesis import _design_key

import util

KF = ("1", "0", "0")


def test_bounds_invariants():
    with pytest.raises(ValueError):
        SearchBounds(1, 0, 1)
    with pytest.raises(ValueError):
        SearchBounds(2, -1, 1)
    with pytest.raises(ValueError):
        SearchBounds(2, 0, 0)


def test_enumerate_m1_two_layer_count(m1):
    designs = list(enumerate_designs(m1, SearchBounds(2, 0, 1)))
    assert len(designs) == 6
    # 2 no-edge constants + 4 one-edge unary programs
    by_edges = sorted(len(d.edges) for d in designs)
    assert by_edges == [0, 0, 1, 1, 1, 1]
    keys = {_design_key(d) for d in designs}
    assert len(keys) == 6  # pairwise distinct
    for d in designs:
        assert design_validate(d, m1.domain).ok


def test_enumerate_contains_trivial(id2):
    stream = enumerate_designs(id2, SearchBounds(2, 0, 2))
    assert any(d == trivial_design(id2) for d in stream)


def test_enumerate_m_max_zero_means_two_layers(m1):
    for d in enumerate_designs(m1, SearchBounds(4, 0, 1)):
        assert d.num_layers == 2


def test_enumerate_dedupes_intermediate_renamings(m1):
    # with two interchangeable middle nodes, designs must be unique up to renaming
    designs = list(enumerate_designs(m1, SearchBounds(3, 2, 1)))
    keys = {_design_key(d) for d in designs}
    assert len(keys) == len(designs)
    from decent.synthesis import _relabel

    seen = set()
    for d in designs:
        mid = d.layers[1] if d.num_layers == 3 else ()
        if len(mid) == 2:
            swapped = _relabel(d, {mid[0]: mid[1], mid[1]: mid[0]})
            assert _design_key(swapped) not in seen
        seen.add(_design_key(d))


def test_general_transmission_mode_enumerates_selective_rules(m1):
    bounds = SearchBounds(3, 1, 1, full_transmission_only=False)
    selective = [
        d
        for d in enumerate_designs(m1, bounds)
        if any(any(len(dst) == 0 for dst in rule.values()) for rule in d.transmissions.values())
    ]
    assert selective  # rules that sometimes stay silent are part of the space
    for d in selective:
        assert design_validate(d, m1.domain).ok


def test_general_mode_gate():
    with pytest.raises(ValueError):
        list(enumerate_designs(util.m1(), SearchBounds(4, 1, 1, full_transmission_only=False)))


def test_kappa_f_micro(m1, id2, const2):
    assert kappa(m1, KF, SearchBounds(2, 0, 1)).best_cost.combined == 1
    assert kappa(id2, KF, SearchBounds(2, 0, 2)).best_cost.combined == 2
    for weights in (KF, UNIFORM_WEIGHTS, ("0", "1/2", "1/2")):
        result = kappa(const2, weights, SearchBounds(2, 0, 2))
        assert result.best_cost.combined == 0
        assert len(result.best_design.edges) == 0


def test_kappa_result_is_rechecked_and_implements(id2):
    result = kappa(id2, KF, SearchBounds(2, 0, 2))
    assert implements(result.best_design, id2).ok
    assert design_validate(result.best_design, id2.domain).ok
    assert result.optimality == "exact-within-bounds"


def test_kappa_never_beats_trivial_upper_bound(id2):
    trivial_value = combined_cost(trivial_design(id2), id2, UNIFORM_WEIGHTS).combined
    result = kappa(id2, UNIFORM_WEIGHTS, SearchBounds(2, 0, 2))
    assert result.best_cost.combined <= trivial_value


def test_kappa_budget_cap(id2):
    with pytest.raises(CandidateCapExceeded):
        kappa(id2, KF, SearchBounds(2, 0, 2), budget=10)


def test_kappa_no_design_within_bounds():
    # the two-input XOR component cannot be computed from one predecessor
    xor = util.machine_of(1, 2, {"0": "0", "1": "1"})
    # shrink the domain so nothing with p_max=1... use a 2-in 1-bit machine instead
    machine = util.machine_of(2, 2, {"00": "00", "01": "10", "10": "10", "11": "00"})
    with pytest.raises(NoImplementingDesignWithinBounds):
        kappa(machine, KF, SearchBounds(2, 0, 1))


def test_kappa_monotone_in_bounds():
    rng = random.Random(4)
    inner = SearchBounds(2, 0, 1)
    outer = SearchBounds(2, 0, 2)
    for _ in range(6):
        machine = util.random_machine(rng, 2, 2, rng.randint(2, 4))
        try:
            small = kappa(machine, KF, inner).best_cost.combined
        except NoImplementingDesignWithinBounds:
            continue
        large = kappa(machine, KF, outer).best_cost.combined
        assert large <= small


def test_kappa_deterministic(id2):
    a = kappa(id2, KF, SearchBounds(2, 0, 2))
    b = kappa(id2, KF, SearchBounds(2, 0, 2))
    assert a.best_design == b.best_design and a.explored == b.explored


def test_kappa_invariant_under_symbol_permutation():
    rng = random.Random(11)
    bounds = SearchBounds(2, 0, 2)
    for _ in range(4):
        machine = util.random_machine(rng, 2, 2, rng.randint(2, 4))
        flipped = machine_validate(
            {
                "n": 2,
                "alphabet": 2,
                "entries": [
                    (tuple(1 - v for v in s), tuple(1 - v for v in o))
                    for s, o in machine.entries.items()
                ],
            }
        )
        for weights in (KF, UNIFORM_WEIGHTS):
            a = kappa(machine, weights, bounds).best_cost.combined
            b = kappa(flipped, weights, bounds).best_cost.combined
            assert a == b


def test_approximate_kappa_examples(id2, const2):
    exact = kappa(id2, KF, SearchBounds(2, 0, 2))
    full = approximate_kappa(id2, KF, SearchBounds(2, 0, 2), 1)
    assert full.best_cost.combined == exact.best_cost.combined
    assert full.best_design == exact.best_design
    part = approximate_kappa(id2, KF, SearchBounds(2, 0, 2), Fraction(3, 4))
    assert part.best_cost.combined <= exact.best_cost.combined
    assert len(part.coverage) >= 3
    low = approximate_kappa(const2, KF, SearchBounds(2, 0, 2), Fraction(1, 4))
    assert low.best_cost.combined == 0


def test_approximate_kappa_monotone(id2):
    costs = [
        approximate_kappa(id2, KF, SearchBounds(2, 0, 2), q).best_cost.combined
        for q in (1, Fraction(3, 4), Fraction(1, 2), Fraction(1, 4))
    ]
    assert costs == sorted(costs, reverse=True)


def test_approximate_kappa_rejects_bad_coverage(id2):
    with pytest.raises(ValueError):
        approximate_kappa(id2, KF, SearchBounds(2, 0, 2), 0)
    with pytest.raises(ValueError):
        approximate_kappa(id2, KF, SearchBounds(2, 0, 2), Fraction(3, 2))


def test_anneal_zero_iterations_returns_trivial(id2):
    result = anneal(id2, UNIFORM_WEIGHTS, SearchBounds(2, 0, 2), seed=3, schedule=AnnealSchedule(iterations=0))
    assert result.best_design == trivial_design(id2)
    assert result.explored == 0
    assert result.optimality == "heuristic"


def test_anneal_reaches_known_optimum(m1, id2):
    r1 = anneal(m1, KF, SearchBounds(2, 0, 1), seed=1, schedule=AnnealSchedule(iterations=1500))
    assert r1.best_cost.combined == 1
    r2 = anneal(id2, KF, SearchBounds(2, 0, 2), seed=1, schedule=AnnealSchedule(iterations=3000))
    assert r2.best_cost.combined == 2


def test_anneal_deterministic_and_bounded_by_trivial(id2):
    schedule = AnnealSchedule(iterations=800)
    a = anneal(id2, UNIFORM_WEIGHTS, SearchBounds(2, 0, 2), seed=9, schedule=schedule)
    b = anneal(id2, UNIFORM_WEIGHTS, SearchBounds(2, 0, 2), seed=9, schedule=schedule)
    assert a.best_design == b.best_design
    assert a.best_cost.combined == b.best_cost.combined
    assert a.seed == 9
    trivial_value = combined_cost(trivial_design(id2), id2, UNIFORM_WEIGHTS).combined
    assert a.best_cost.combined <= trivial_value


def test_anneal_multilayer_moves_stay_valid(m1):
    bounds = SearchBounds(3, 1, 2)
    result = anneal(m1, UNIFORM_WEIGHTS, bounds, seed=2, schedule=AnnealSchedule(iterations=600))
    assert design_validate(result.best_design, m1.domain).ok
    assert implements(result.best_design, m1).ok


SWAP = AbstractMachine(("a", "b"), ("a", "b"), {"a": "b", "b": "a"})


def test_optimal_coding_swap_needs_one_edge():
    coding, result = optimal_coding(SWAP, 1, 2, KF, SearchBounds(2, 0, 1))
    assert result.best_cost.combined == 1
    assert set(coding) == {"a", "b"}


def test_optimal_coding_constant_is_free():
    const = AbstractMachine(("a",), ("a",), {"a": "a"})
    _, result = optimal_coding(const, 1, 2, KF, SearchBounds(2, 0, 1))
    assert result.best_cost.combined == 0


def test_optimal_coding_length_overflow():
    wide = AbstractMachine(("a", "b", "c"), ("a", "b", "c"), {"a": "a", "b": "b", "c": "c"})
    with pytest.raises(LengthOverflow):
        optimal_coding(wide, 1, 2, KF, SearchBounds(2, 0, 1))


def test_identity_coding_degenerates_to_kappa(id2):
    # an abstract machine whose labels are the sequences themselves, coded by
    # the identity, is the machine itself
    labels = ["".join(map(str, s)) for s in sorted(id2.domain)]
    abstract = AbstractMachine(tuple(labels), tuple(labels), {l: l for l in labels})
    coding = {l: tuple(int(c) for c in l) for l in labels}
    assert encode(abstract, coding, 2, Alphabet(2)) == id2


def test_optimal_coding_fixes_first_input_when_disjoint():
    machine = AbstractMachine(("a", "b"), ("x", "y"), {"a": "x", "b": "y"})
    coding, _ = optimal_coding(machine, 1, 2, KF, SearchBounds(2, 0, 1))
    assert coding["a"] == (0,)
