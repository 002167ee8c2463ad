from fractions import Fraction

import pytest

from decent import (
    LagMatrix,
    ParseError,
    ValidationError,
    export_dot,
    parse_design_file,
    parse_game_file,
    parse_machine_file,
    serialize_design,
    serialize_game,
    serialize_machine,
    trivial_design,
)

import util


def test_machine_round_trip(id2):
    text = serialize_machine(id2)
    assert parse_machine_file(text) == id2
    assert serialize_machine(parse_machine_file(text)) == text


def test_machine_frequencies_round_trip_exactly():
    machine = util.machine_of(1, 2, {"0": "1", "1": "0"}, freq=["1/3", "2/3"])
    text = serialize_machine(machine)
    again = parse_machine_file(text)
    assert again.frequencies == {(0,): Fraction(1, 3), (1,): Fraction(2, 3)}
    decimal = util.machine_of(1, 2, {"0": "1", "1": "0"}, freq=["0.1", "0.9"])
    again = parse_machine_file(serialize_machine(decimal))
    assert again.frequencies == {(0,): Fraction(1, 10), (1,): Fraction(9, 10)}


def test_machine_parse_reports_symbol_out_of_range():
    text = '{"n": 3, "alphabet": 2, "entries": [{"in": "102", "out": "000"}]}'
    with pytest.raises(ValidationError) as err:
        parse_machine_file(text)
    assert "SymbolOutOfRange" in err.value.codes()
    assert any("entries[0].in" in str(v) for v in err.value.violations)


def test_machine_parse_errors():
    with pytest.raises(ParseError):
        parse_machine_file('{"n": 1, "alphabet": 2')  # truncated
    with pytest.raises(ParseError) as err:
        parse_machine_file('{"n": 1, "alphabet": 2, "entries": []} trailing')
    assert "line" in str(err.value)
    with pytest.raises(ParseError):
        parse_machine_file('{"alphabet": 2, "entries": []}')  # missing n
    with pytest.raises(ParseError):
        parse_machine_file('{"n": 1, "alphabet": 2, "entries": [{"in": "a", "out": "0"}]}')


def test_design_round_trip(sel1, id2):
    for design in (sel1, trivial_design(id2)):
        text = serialize_design(design)
        assert parse_design_file(text) == design
        assert serialize_design(parse_design_file(text)) == text


def test_design_parse_unknown_node():
    text = """
    {"alphabet": 2,
     "layers": [["a"], ["b"]],
     "edges": [["a", "zzz"]],
     "behavior": {"b": [{"recv": {}, "out": 0}]}}
    """
    with pytest.raises(ParseError) as err:
        parse_design_file(text)
    assert "zzz" in str(err.value)


def test_design_parse_duplicate_row():
    text = """
    {"alphabet": 2,
     "layers": [["a"], ["b"]],
     "edges": [],
     "behavior": {"b": [{"recv": {}, "out": 0}, {"recv": {}, "out": 1}]}}
    """
    with pytest.raises(ParseError):
        parse_design_file(text)


def test_design_parse_rejects_structural_violations():
    text = """
    {"alphabet": 2,
     "layers": [["a"], ["b"], ["c"]],
     "edges": [["c", "b"]],
     "behavior": {"b": [{"recv": {}, "out": 0}], "c": [{"recv": {}, "out": 0}]}}
    """
    with pytest.raises(ValidationError) as err:
        parse_design_file(text)
    assert "BackwardEdge" in err.value.codes()


def test_game_round_trip():
    game = util.matching_pennies()
    lags = LagMatrix(((1, 2), (3, 1)))
    text = serialize_game(game, lags)
    game2, lags2 = parse_game_file(text)
    assert game2 == game and lags2 == lags
    assert serialize_game(game2, lags2) == text
    bare, no_lags = parse_game_file(serialize_game(game))
    assert bare == game and no_lags is None


def test_game_parse_errors():
    with pytest.raises(ParseError):
        parse_game_file('{"players": 2, "strategies": [2, 2], "payoffs": [[1, 0, 0]]}')
    with pytest.raises(ParseError):
        parse_game_file('{"players": 2, "strategies": [2], "payoffs": []}')


def test_dot_plain(sel1):
    dot = export_dot(sel1)
    assert dot.count("rank=same") == 3
    assert dot.count("->") == 2
    assert "style" not in dot


def test_dot_with_input(sel1):
    dot = export_dot(sel1, (0,))
    assert '"eta" -> "alpha" [style=solid];' in dot
    assert '"alpha" -> "tau" [style=dashed];' in dot
    assert '[label="tau = 0"]' in dot


def test_dot_trivial_all_active(id2):
    dot = export_dot(trivial_design(id2), (1, 1))
    assert dot.count("style=solid") == 4
    assert "style=dashed" not in dot
