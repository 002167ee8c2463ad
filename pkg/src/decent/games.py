"""Best-reply iteration of finite normal-form games as layered designs.

Each round is a layer of player nodes; a node outputs a best reply to the
strategy profile it observes, possibly with per-pair observation lags.  Ties
prefer the player's own previous strategy (so pure Nash profiles are fixed
points), then the lowest strategy index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .design import Design, PartialInput, design_validate, simulate
from .errors import LagExceedsHorizon, ShapeMismatch, ValidationError, Violation
from .machine import Alphabet, Machine, Seq, machine_validate

Profile = tuple[int, ...]


@dataclass(frozen=True)
class NormalFormGame:
    """Per-player strategy counts and payoff tables over full profiles."""

    strategy_counts: tuple[int, ...]
    payoffs: tuple[dict[Profile, Fraction], ...]

    def __post_init__(self):
        violations = []
        if not self.strategy_counts:
            violations.append(Violation("BadGame", "a game needs at least one player"))
        if any(not isinstance(c, int) or c < 1 for c in self.strategy_counts):
            violations.append(Violation("BadGame", f"strategy counts must be positive integers: {self.strategy_counts}"))
        if len(self.payoffs) != len(self.strategy_counts):
            violations.append(
                Violation("BadGame", f"{len(self.payoffs)} payoff tables for {len(self.strategy_counts)} players")
            )
        if not violations:
            space = set(self.profiles())
            for i, table in enumerate(self.payoffs):
                if set(table) != space:
                    violations.append(Violation("BadGame", f"payoff table of player {i} is not total on the profiles"))
        if violations:
            raise ValidationError(violations)

    @classmethod
    def of(cls, strategy_counts, payoff_tables) -> "NormalFormGame":
        counts = tuple(strategy_counts)
        tables = tuple(
            {tuple(p): Fraction(v) for p, v in table.items()} for table in payoff_tables
        )
        return cls(counts, tables)

    @property
    def players(self) -> int:
        return len(self.strategy_counts)

    def profiles(self):
        return product(*(range(c) for c in self.strategy_counts))

    def utility(self, player: int, profile: Profile) -> Fraction:
        return self.payoffs[player][profile]

    def best_replies(self, player: int, profile: Profile) -> tuple[int, ...]:
        """All payoff-maximizing strategies of `player` against profile[-player]."""
        scores = []
        for a in range(self.strategy_counts[player]):
            candidate = profile[:player] + (a,) + profile[player + 1 :]
            scores.append((self.utility(player, candidate), a))
        top = max(v for v, _ in scores)
        return tuple(a for v, a in scores if v == top)

    def pure_nash(self) -> list[Profile]:
        return [
            p for p in self.profiles() if all(p[i] in self.best_replies(i, p) for i in range(self.players))
        ]


@dataclass(frozen=True)
class LagMatrix:
    """lag(i, j) rounds pass before player i sees player j; own lag is 1."""

    lags: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        violations = []
        size = len(self.lags)
        for i, row in enumerate(self.lags):
            if len(row) != size:
                violations.append(Violation("BadLags", f"row {i} has {len(row)} entries, expected {size}"))
                continue
            for j, lag in enumerate(row):
                if not isinstance(lag, int) or lag < 1:
                    violations.append(Violation("BadLags", f"lag({i},{j}) must be an integer >= 1, got {lag!r}"))
                elif i == j and lag != 1:
                    violations.append(Violation("BadLags", f"lag({i},{i}) must be 1, got {lag}"))
        if violations:
            raise ValidationError(violations)

    @classmethod
    def unit(cls, players: int) -> "LagMatrix":
        return cls(tuple(tuple(1 for _ in range(players)) for _ in range(players)))

    def lag(self, i: int, j: int) -> int:
        return self.lags[i][j]


def _node(t: int, i: int) -> str:
    return f"{t}/{i}"


def _player_of(node: str) -> int:
    return int(node.split("/")[1])


def best_reply_design(
    game: NormalFormGame,
    rounds: int,
    lags: LagMatrix | None = None,
    rivals_only: bool = False,
) -> Design:
    """k rounds of simultaneous best replies as a (k+1)-layer design.

    Node (i, t) reads player j's strategy from round t - lag(i, j), clamped
    to the initial profile; transmission rules are full.  With rivals_only
    the player's own previous strategy is not observed and ties fall to the
    lowest strategy index.
    """
    if rounds < 1:
        raise LagExceedsHorizon(f"need at least one round, got {rounds}")
    nplayers = game.players
    lags = lags if lags is not None else LagMatrix.unit(nplayers)
    if len(lags.lags) != nplayers:
        raise ShapeMismatch(f"lag matrix is {len(lags.lags)}x{len(lags.lags)} for {nplayers} players")
    k = max(2, max(game.strategy_counts))
    layer_count = rounds + 1
    layers = tuple(tuple(_node(t, i) for i in range(nplayers)) for t in range(1, layer_count + 1))
    domain: list[Profile] = sorted(game.profiles())

    sources: dict[str, dict[int, str]] = {}
    edges: set[tuple[str, str]] = set()
    for t in range(2, layer_count + 1):
        for i in range(nplayers):
            node = _node(t, i)
            src: dict[int, str] = {}
            for j in range(nplayers):
                if rivals_only and j == i:
                    continue
                src[j] = _node(max(1, t - lags.lag(i, j)), j)
                edges.add((src[j], node))
            sources[node] = src

    outputs: dict[str, dict[Profile, int]] = {}
    for i in range(nplayers):
        outputs[_node(1, i)] = {s: s[i] for s in domain}
    programs: dict[str, dict[PartialInput, int]] = {}
    for t in range(2, layer_count + 1):
        for i in range(nplayers):
            node = _node(t, i)
            src = sources[node]
            table: dict[PartialInput, int] = {}
            out_map: dict[Profile, int] = {}
            for s in domain:
                assign = {pred: outputs[pred][s] for pred in set(src.values())}
                nu = PartialInput.of(assign)
                if nu not in table:
                    base = tuple(assign[src[j]] if j in src else 0 for j in range(nplayers))
                    replies = game.best_replies(i, base)
                    own_prev = assign[src[i]] if i in src else None
                    table[nu] = own_prev if own_prev in replies else min(replies)
                out_map[s] = table[nu]
            programs[node] = table
            outputs[node] = out_map

    succs: dict[str, list[str]] = {}
    for a, b in edges:
        succs.setdefault(a, []).append(b)
    transmissions = {
        node: {nu: frozenset(succs[node]) for nu in programs[node]}
        for node in programs
        if node in succs
    }
    design = Design(
        layers=layers,
        edges=frozenset(edges),
        programs=programs,
        transmissions=transmissions,
        alphabet=Alphabet(k),
    )
    report = design_validate(design, domain)
    if not report.ok:
        raise AssertionError(f"best-reply construction produced an invalid design: {report.errors}")
    return design


def game_domain(game: NormalFormGame) -> list[Profile]:
    """All valid strategy profiles, the machine domain of a best-reply design."""
    return sorted(game.profiles())


def implemented_machine(design: Design, domain) -> Machine:
    """Tabulate the machine a validated design computes on a domain."""
    entries = {tuple(s): simulate(design, tuple(s)).terminal_outputs for s in domain}
    return machine_validate(
        {"n": design.n, "alphabet": design.alphabet.size, "entries": sorted(entries.items())}
    )


def is_best_reply_program(program, game: NormalFormGame, player: int) -> bool:
    """Is every table entry a payoff-maximizing reply for `player`?

    The program must be keyed by full strategy profiles.
    """
    if not 0 <= player < game.players:
        raise ShapeMismatch(f"player {player} not in 0..{game.players - 1}")
    for profile, choice in program.items():
        profile = tuple(profile)
        if len(profile) != game.players or any(
            not 0 <= v < c for v, c in zip(profile, game.strategy_counts)
        ):
            raise ShapeMismatch(f"{profile} is not a full strategy profile")
        if choice not in game.best_replies(player, profile):
            return False
    return True


def node_profile_table(design: Design, node: str) -> dict[Profile, int]:
    """Re-key a best-reply node's program by player profile.

    Only meaningful for designs built by best_reply_design with its own
    canonical round/player node ids and full observation (not rivals_only).
    """
    nplayers = design.n
    table = design.programs[node]
    out: dict[Profile, int] = {}
    for nu, choice in table.items():
        profile: list[int | None] = [None] * nplayers
        for pred, v in nu.items:
            profile[_player_of(pred)] = v
        if any(v is None for v in profile):
            raise ShapeMismatch(f"program row {nu} of {node} does not observe every player")
        out[tuple(profile)] = choice
    return out
