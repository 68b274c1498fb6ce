"""Partial-monitoring games: exact representation, parsing and validation.

Inside Python every index is 0-based: actions ``0..K-1``, outcomes
``0..E-1`` and feedback symbols ``0..F-1``. Game documents (JSON) number
feedback symbols from 1, as is customary when writing the matrices down.
"""
import json
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from functools import cached_property

import numpy as np

__all__ = [
    "Game", "ValidationReport", "GameError", "GameParseError", "GameValidationError",
    "make_game", "parse_game", "serialize_game", "load_game", "validate", "parse_rational",
    "format_rational",
]


class GameError(ValueError):
    pass


class GameParseError(GameError):
    """The document is not a well-formed game document."""


class GameValidationError(GameError):
    """The document parsed but violates a game invariant."""

    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(f"{loc}: {msg}" for loc, msg in report.issues))


@dataclass(frozen=True)
class Game:
    """A finite partial-monitoring game.

    ``loss[a][i]`` is the loss of action ``a`` under outcome ``i`` (a
    Fraction in [0, 1]); ``feedback[a][i]`` is the 0-based symbol observed.
    Construction does not validate; use :func:`make_game` or
    :func:`validate`.
    """

    name: str
    loss: tuple
    feedback: tuple
    F: int

    @property
    def K(self):
        return len(self.loss)

    @property
    def E(self):
        return len(self.loss[0]) if self.loss else 0

    def row(self, a):
        return self.loss[a]

    @cached_property
    def loss_array(self):
        return np.array([[float(x) for x in r] for r in self.loss], dtype=float)

    @cached_property
    def feedback_array(self):
        return np.array(self.feedback, dtype=np.intp)

    def permuted(self, order):
        """Game with actions reordered so that new action ``j`` is old ``order[j]``."""
        return Game(self.name, tuple(self.loss[a] for a in order),
                    tuple(self.feedback[a] for a in order), self.F)

    def restricted(self, actions):
        return Game(self.name, tuple(self.loss[a] for a in actions),
                    tuple(self.feedback[a] for a in actions), self.F)


@dataclass
class ValidationReport:
    issues: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.issues

    def add(self, location, message):
        self.issues.append((location, message))


def parse_rational(value):
    """Exact rational from an int, a written decimal, a ``"p/q"`` string, or a Fraction.

    Binary floats are only accepted if they came from a JSON document parsed
    with ``parse_float=Decimal`` (so the written digits survive); a bare
    Python float is rejected because its decimal spelling is ambiguous.
    """
    if isinstance(value, bool):
        raise GameParseError(f"not a number: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise GameParseError(f"not a finite number: {value!r}")
        return Fraction(value)
    if isinstance(value, float):
        raise GameParseError(f"binary float {value!r} is not exact; write it as a string or p/q")
    if isinstance(value, str):
        s = value.strip()
        try:
            if "/" in s:
                p, q = s.split("/")
                return Fraction(int(p), int(q))
            return Fraction(Decimal(s)) if any(ch in s for ch in ".eE") else Fraction(int(s))
        except (ValueError, ZeroDivisionError, InvalidOperation):
            raise GameParseError(f"not a rational: {value!r}") from None
    raise GameParseError(f"not a number: {value!r}")


def format_rational(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def validate(game):
    """Check every game invariant, reporting each violation as an issue."""
    rep = ValidationReport()
    if not game.loss:
        rep.add("loss", "no actions")
        return rep
    E = len(game.loss[0])
    if E == 0:
        rep.add("loss", "no outcomes")
    if len(game.feedback) != len(game.loss):
        rep.add("feedback", f"has {len(game.feedback)} rows, loss has {len(game.loss)}")
    for a, row in enumerate(game.loss):
        if len(row) != E:
            rep.add(f"loss[{a + 1}]", "row length mismatch")
        for i, x in enumerate(row):
            if not isinstance(x, Fraction):
                rep.add(f"loss[{a + 1}][{i + 1}]", "loss entry is not an exact rational")
            elif not 0 <= x <= 1:
                rep.add(f"loss[{a + 1}][{i + 1}]", "loss entry outside [0,1]")
    if not isinstance(game.F, int) or game.F < 1:
        rep.add("F", "symbol count must be a positive integer")
    for a, row in enumerate(game.feedback):
        if len(row) != E:
            rep.add(f"feedback[{a + 1}]", "row length mismatch")
        for i, f in enumerate(row):
            if not isinstance(f, (int, np.integer)) or isinstance(f, bool):
                rep.add(f"feedback[{a + 1}][{i + 1}]", "symbol is not an integer")
            elif f < 0:
                rep.add(f"feedback[{a + 1}][{i + 1}]", "symbol < 1")
            elif isinstance(game.F, int) and f >= game.F:
                rep.add(f"feedback[{a + 1}][{i + 1}]", "symbol out of range")
    return rep


def make_game(name, loss, feedback, F=None):
    """Build and validate a game from matrices written with 1-based symbols."""
    try:
        loss_rows = tuple(tuple(parse_rational(x) for x in row) for row in loss)
        fb_rows = tuple(tuple(_symbol(s) - 1 for s in row) for row in feedback)
    except TypeError:
        raise GameParseError("loss and feedback must be arrays of arrays") from None
    if F is None:
        F = 1 + max((s for row in fb_rows for s in row), default=0)
    game = Game(str(name), loss_rows, fb_rows, F)
    rep = validate(game)
    if not rep.ok:
        raise GameValidationError(rep)
    return game


def _symbol(s):
    if isinstance(s, bool) or not isinstance(s, (int, np.integer)):
        raise GameParseError(f"feedback symbol must be an integer, got {s!r}")
    return int(s)


def parse_game(text):
    """Parse a JSON game document.

    Fields: ``name``, optional ``F``, ``loss`` (entries int, decimal or
    ``"p/q"``), ``feedback`` (integers from 1). Whitespace is insignificant.
    """
    try:
        doc = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise GameParseError(f"malformed document: {exc}") from None
    if not isinstance(doc, dict):
        raise GameParseError("malformed document: top level must be an object")
    for key in ("loss", "feedback"):
        if key not in doc:
            raise GameParseError(f"malformed document: missing field {key!r}")
        if not isinstance(doc[key], list) or not all(isinstance(r, list) for r in doc[key]):
            raise GameParseError(f"malformed document: {key!r} must be an array of arrays")
    loss, feedback = doc["loss"], doc["feedback"]
    if len(loss) != len(feedback) or any(len(r) != len(s) for r, s in zip(loss, feedback)):
        raise GameParseError("dimension mismatch between loss and feedback")
    F = doc.get("F")
    if F is not None and (isinstance(F, bool) or not isinstance(F, int)):
        raise GameParseError("F must be an integer")
    return make_game(doc.get("name", "game"), loss, feedback, F)


def serialize_game(game, indent=None):
    doc = {
        "name": game.name,
        "F": game.F,
        "loss": [[format_rational(x) for x in row] for row in game.loss],
        "feedback": [[int(s) + 1 for s in row] for row in game.feedback],
    }
    return json.dumps(doc, indent=indent)


def load_game(path):
    with open(path) as fh:
        return parse_game(fh.read())
