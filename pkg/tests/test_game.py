import json
from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from partmon import fixture, load_game, make_game, parse_game, serialize_game, validate
from partmon.game import (Game, GameParseError, GameValidationError, format_rational,
                          parse_rational)

from .strategies import games


def test_spam_document_roundtrip():
    g = fixture("spam", "1/3")
    assert g.K == 3 and g.E == 2 and g.F == 2
    assert g.loss[2] == (Fraction(1, 3), Fraction(1, 3))
    assert g.feedback[2] == (0, 1)
    assert parse_game(serialize_game(g)) == g


@given(games())
def test_serialize_parse_roundtrip(g):
    assert parse_game(serialize_game(g, indent=2)) == g


def test_load_game_from_file(tmp_path):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"name": "h", "loss": [[0, 1], [1, 0]], "feedback": [[1, 1], [1, 1]]}))
    g = load_game(p)
    assert g == Game("h", ((0, 1), (1, 0)), ((0, 0), (0, 0)), 1)


def test_whitespace_is_insignificant():
    doc = '{"name":"x","loss":[[0,1],[1,0]],"feedback":[[1,2],[1,1]]}'
    spaced = '{\n  "name" : "x",\n "loss": [ [ 0 , 1 ] , [1,0] ],\n"feedback":[[1, 2],[1,1]]\n}'
    assert parse_game(doc) == parse_game(spaced)


@pytest.mark.parametrize("text,expected", [
    ("1/3", Fraction(1, 3)), ("0.25", Fraction(1, 4)), ("1", Fraction(1)), (" 2/4 ", Fraction(1, 2)),
])
def test_parse_rational_strings(text, expected):
    assert parse_rational(text) == expected


def test_parse_rational_decimals_keep_written_digits():
    assert parse_rational(Decimal("0.1")) == Fraction(1, 10)
    doc = '{"loss": [[0.1, 0.9], [0.3, 0.7]], "feedback": [[1, 1], [1, 2]]}'
    assert parse_game(doc).loss[0] == (Fraction(1, 10), Fraction(9, 10))


@pytest.mark.parametrize("bad", [0.1, True, "abc", "1/0", None, [1]])
def test_parse_rational_rejects(bad):
    with pytest.raises(GameParseError):
        parse_rational(bad)


@given(st.integers(-10**30, 10**30), st.integers(1, 10**30))
def test_rational_text_roundtrip(p, q):
    # the oracle is integer arithmetic: p/q and its normal form cross-multiply equal
    x = parse_rational(f"{p}/{q}")
    assert x.numerator * q == p * x.denominator
    assert parse_rational(format_rational(x)) == x


@pytest.mark.parametrize("doc,fragment", [
    ('{"loss": [[0, 1]], "feedback": [[1]]}', "dimension mismatch"),
    ('{"loss": [[0, 1]]}', "missing field"),
    ('[1, 2]', "top level"),
    ('{"loss": [[0, 1]', "malformed"),
    ('{"loss": [[0, 1]], "feedback": [[1, 1.5]]}', "integer"),
])
def test_parse_errors(doc, fragment):
    with pytest.raises(GameParseError, match=fragment):
        parse_game(doc)


@pytest.mark.parametrize("loss,fb,F,fragment", [
    ([["3/2", 0]], [[1, 1]], None, "outside"),
    ([[0, 1]], [[0, 1]], None, "symbol < 1"),
    ([[0, 1]], [[1, 3]], 2, "out of range"),
    ([[0, 1], [1]], [[1, 1], [1]], None, "row length"),
])
def test_validation_errors(loss, fb, F, fragment):
    with pytest.raises(GameValidationError, match=fragment):
        make_game("bad", loss, fb, F=F)


def test_validate_reports_every_issue():
    g = Game("bad", ((Fraction(2), Fraction(-1)),), ((0, 5),), 2)
    rep = validate(g)
    assert len(rep.issues) == 3 and not rep.ok


def test_validate_rejects_float_entries():
    g = Game("bad", ((0.5, Fraction(1)),), ((0, 0),), 1)
    assert any("exact rational" in m for _, m in validate(g).issues)


def test_permuted_and_restricted():
    g = fixture("spam", "1/3")
    p = g.permuted([2, 0, 1])
    assert p.loss[0] == g.loss[2] and p.feedback[0] == g.feedback[2]
    r = g.restricted([1, 2])
    assert r.K == 2 and r.loss[0] == g.loss[1]


@pytest.mark.parametrize("name,param", [("spam", "2"), ("spam", "-1/2"), ("flower", 1)])
def test_fixture_parameter_errors(name, param):
    with pytest.raises(ValueError):
        fixture(name, param)


def test_fixture_rejects_unknown_and_extra_parameters():
    with pytest.raises(ValueError):
        fixture("nope")
    with pytest.raises(ValueError):
        fixture("exhibit1", 3)
