"""Shared builders for the micro machines and designs used across tests."""

from __future__ import annotations

from itertools import product

from decent import Design, NormalFormGame, PartialInput, machine_validate


def seq(text):
    return tuple(int(c) for c in text)


def machine_of(n, k, table, freq=None):
    raw = {
        "n": n,
        "alphabet": k,
        "entries": [(seq(a), seq(b)) for a, b in table.items()],
    }
    if freq is not None:
        raw["frequencies"] = freq
    return machine_validate(raw)


def m1():
    return machine_of(1, 2, {"0": "0", "1": "1"})


def id2():
    return machine_of(2, 2, {"00": "00", "01": "01", "10": "10", "11": "11"})


def and_or():
    # components: (s1 and s2, s1 or s2)
    return machine_of(2, 2, {"00": "00", "01": "01", "10": "01", "11": "11"})


def const2():
    return machine_of(2, 2, {"00": "00", "01": "00", "10": "00", "11": "00"})


def sel1():
    """Three chained nodes; the middle one transmits only on input 1."""
    P = PartialInput.of
    return Design.build(
        layers=[("eta",), ("alpha",), ("tau",)],
        edges=[("eta", "alpha"), ("alpha", "tau")],
        programs={
            "alpha": {P({"eta": 0}): 0, P({"eta": 1}): 1},
            "tau": {P(): 0, P({"alpha": 1}): 1},
        },
        transmissions={"alpha": {P({"eta": 0}): (), P({"eta": 1}): ("tau",)}},
        alphabet=2,
    )


def zero_edge_const2():
    P = PartialInput.of
    return Design.build(
        layers=[("1/0", "1/1"), ("2/0", "2/1")],
        edges=[],
        programs={"2/0": {P(): 0}, "2/1": {P(): 0}},
        transmissions={},
        alphabet=2,
    )


def random_machine(rng, n, k, d_size):
    space = list(product(range(k), repeat=n))
    inputs = rng.sample(space, d_size)
    entries = [(s, tuple(rng.randrange(k) for _ in range(n))) for s in inputs]
    return machine_validate({"n": n, "alphabet": k, "entries": entries})


def coordination_game():
    table = {(a, b): 1 if a == b else 0 for a in (0, 1) for b in (0, 1)}
    return NormalFormGame.of((2, 2), [table, table])


def matching_pennies():
    match = {(a, b): 1 if a == b else 0 for a in (0, 1) for b in (0, 1)}
    mismatch = {(a, b): 0 if a == b else 1 for a in (0, 1) for b in (0, 1)}
    return NormalFormGame.of((2, 2), [match, mismatch])


def random_game(rng, counts):
    profiles = list(product(*(range(c) for c in counts)))
    tables = [{p: rng.randrange(0, 4) for p in profiles} for _ in counts]
    return NormalFormGame.of(counts, tables)
