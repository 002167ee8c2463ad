"""Finite input-output machines over a fixed finite alphabet.

A machine maps length-n symbol sequences to length-n symbol sequences on an
explicit finite domain.  Symbols are canonically 0..k-1; arbitrary symbol
labels are the caller's concern.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

from .errors import (
    IndexOutOfRange,
    LengthOverflow,
    NonInjectiveCoding,
    ValidationError,
    Violation,
)

Seq = tuple[int, ...]

FREQ_SUM_TOL = Fraction(1, 10**9)


@dataclass(frozen=True)
class Alphabet:
    """Symbol set 0..size-1; size must be at least 2."""

    size: int

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 2:
            raise ValidationError(
                [Violation("BadAlphabet", f"alphabet size must be an integer >= 2, got {self.size!r}")]
            )

    def symbols(self) -> range:
        return range(self.size)

    def sequences(self, n: int) -> Iterable[Seq]:
        return product(range(self.size), repeat=n)

    def contains_seq(self, s: Iterable[int]) -> bool:
        return all(isinstance(v, int) and 0 <= v < self.size for v in s)


@dataclass(frozen=True)
class Machine:
    """A function from input sequences to output sequences, both length n.

    `frequencies`, when present, gives the probability of each input; when
    absent all inputs are treated as equally frequent.  Instances are
    immutable after validation and safe to share across workers.
    """

    n: int
    alphabet: Alphabet
    entries: dict[Seq, Seq]
    frequencies: dict[Seq, Fraction] | None = None

    @property
    def domain(self):
        return self.entries.keys()

    def frequency(self, s: Seq) -> Fraction:
        if self.frequencies is None:
            return Fraction(1, len(self.entries))
        return self.frequencies[s]

    def to_raw(self) -> dict:
        items = sorted(self.entries.items())
        raw = {
            "n": self.n,
            "alphabet": self.alphabet.size,
            "entries": [(s, o) for s, o in items],
        }
        if self.frequencies is not None:
            raw["frequencies"] = [self.frequencies[s] for s, _ in items]
        return raw


def _as_seq(value) -> Seq:
    if isinstance(value, str):
        return tuple(int(c) for c in value)
    return tuple(value)


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def machine_validate(raw) -> Machine:
    """Validate a raw machine description and return an immutable Machine.

    Raises ValidationError listing every violation found.  Accepts a Machine
    as well, so validating a validated machine is an identity.
    """
    if isinstance(raw, Machine):
        raw = raw.to_raw()
    violations: list[Violation] = []

    n = raw.get("n")
    if not isinstance(n, int) or n < 1:
        violations.append(Violation("BadShape", f"n must be a positive integer, got {n!r}", "n"))
        raise ValidationError(violations)

    size = raw.get("alphabet")
    if isinstance(size, Alphabet):
        size = size.size
    if not isinstance(size, int) or size < 2:
        violations.append(Violation("BadAlphabet", f"alphabet size must be an integer >= 2, got {size!r}", "alphabet"))
        raise ValidationError(violations)

    raw_entries = raw.get("entries")
    if isinstance(raw_entries, Mapping):
        raw_entries = list(raw_entries.items())
    if not raw_entries:
        violations.append(Violation("EmptyDomain", "a machine needs at least one entry", "entries"))
        raise ValidationError(violations)

    entries: dict[Seq, Seq] = {}
    order: list[Seq] = []
    for idx, pair in enumerate(raw_entries):
        inp, out = pair
        inp, out = _as_seq(inp), _as_seq(out)
        for label, seq in (("in", inp), ("out", out)):
            where = f"entries[{idx}].{label}"
            if len(seq) != n:
                violations.append(Violation("LengthMismatch", f"sequence has length {len(seq)}, expected {n}", where))
            bad = [v for v in seq if not isinstance(v, int) or v < 0 or v >= size]
            if bad:
                violations.append(Violation("SymbolOutOfRange", f"symbols {bad} not in 0..{size - 1}", where))
        if inp in entries:
            violations.append(Violation("DuplicateInput", f"input {inp} appears more than once", f"entries[{idx}].in"))
        else:
            entries[inp] = out
            order.append(inp)

    frequencies: dict[Seq, Fraction] | None = None
    raw_freq = raw.get("frequencies")
    if raw_freq is not None:
        if isinstance(raw_freq, Mapping):
            freq_pairs = [(_as_seq(k), v) for k, v in raw_freq.items()]
            if {k for k, _ in freq_pairs} != set(entries):
                violations.append(Violation("BadFrequencies", "frequency keys do not match the domain", "freq"))
                freq_pairs = []
        else:
            if len(raw_freq) != len(raw_entries):
                violations.append(
                    Violation("BadFrequencies", f"{len(raw_freq)} frequencies for {len(raw_entries)} entries", "freq")
                )
                freq_pairs = []
            else:
                freq_pairs = [(_as_seq(pair[0]), v) for pair, v in zip(raw_entries, raw_freq)]
        if freq_pairs:
            frequencies = {}
            values = []
            for s, v in freq_pairs:
                try:
                    f = _to_fraction(v)
                except (TypeError, ValueError, ZeroDivisionError):
                    violations.append(Violation("BadFrequencies", f"cannot read frequency {v!r}", "freq"))
                    continue
                if f <= 0:
                    violations.append(Violation("BadFrequencies", f"frequency {f} for input {s} is not positive", "freq"))
                frequencies[s] = f
                values.append(f)
            total = sum(values, Fraction(0))
            if abs(total - 1) > FREQ_SUM_TOL:
                violations.append(Violation("BadFrequencies", f"frequencies sum to {total}, expected 1", "freq"))

    if violations:
        raise ValidationError(violations)
    return Machine(n=n, alphabet=Alphabet(size), entries=entries, frequencies=frequencies)


def component(machine: Machine, i: int) -> dict[Seq, int]:
    """The i-th output symbol as a function of the input; i is 1-based."""
    if not 1 <= i <= machine.n:
        raise IndexOutOfRange(f"component index {i} not in 1..{machine.n}")
    return {s: out[i - 1] for s, out in machine.entries.items()}


@dataclass(frozen=True)
class AbstractMachine:
    """A table between opaque labels, prior to any sequence coding."""

    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    table: dict[str, str]

    def __post_init__(self):
        violations = []
        if not self.inputs:
            violations.append(Violation("BadAbstractTable", "no inputs"))
        if not self.outputs:
            violations.append(Violation("BadAbstractTable", "no outputs"))
        if len(set(self.inputs)) != len(self.inputs):
            violations.append(Violation("BadAbstractTable", "duplicate input labels"))
        if len(set(self.outputs)) != len(self.outputs):
            violations.append(Violation("BadAbstractTable", "duplicate output labels"))
        for label in self.inputs:
            if label not in self.table:
                violations.append(Violation("BadAbstractTable", f"table is not defined on input {label!r}"))
            elif self.table[label] not in self.outputs:
                violations.append(Violation("BadAbstractTable", f"table maps {label!r} outside the output set"))
        for label in self.table:
            if label not in self.inputs:
                violations.append(Violation("BadAbstractTable", f"table defined on unknown input {label!r}"))
        if violations:
            raise ValidationError(violations)


def encode(abstract: AbstractMachine, coding: Mapping[str, Iterable[int]], n: int, alphabet: Alphabet) -> Machine:
    """Turn an abstract machine into a sequence machine through a coding.

    `coding` maps every input and output label to a length-n sequence; it must
    be injective on the inputs and injective on the outputs (a shared label
    has a single code, so the two restrictions agree where they overlap).
    """
    k = alphabet.size
    if k**n < len(abstract.inputs) or k**n < len(abstract.outputs):
        raise LengthOverflow(
            f"{k}^{n} sequences cannot code {len(abstract.inputs)} inputs and {len(abstract.outputs)} outputs"
        )
    codes: dict[str, Seq] = {}
    for label in set(abstract.inputs) | set(abstract.outputs):
        if label not in coding:
            raise NonInjectiveCoding(f"coding does not cover label {label!r}")
        seq = _as_seq(coding[label])
        if len(seq) != n or not alphabet.contains_seq(seq):
            raise ValidationError(
                [Violation("SymbolOutOfRange", f"code {seq} for {label!r} is not a valid length-{n} sequence")]
            )
        codes[label] = seq
    for side, labels in (("input", abstract.inputs), ("output", abstract.outputs)):
        seen: dict[Seq, str] = {}
        for label in labels:
            seq = codes[label]
            if seq in seen:
                raise NonInjectiveCoding(f"{side} labels {seen[seq]!r} and {label!r} share the code {seq}")
            seen[seq] = label
    entries = {codes[a]: codes[abstract.table[a]] for a in abstract.inputs}
    return machine_validate({"n": n, "alphabet": k, "entries": list(entries.items())})
