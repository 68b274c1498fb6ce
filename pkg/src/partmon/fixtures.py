"""Catalog of small games used throughout the literature and the tests."""
from fractions import Fraction

from .game import GameError, make_game, parse_rational

__all__ = ["fixture", "FIXTURES", "spam", "hopeless2x2", "exhibit1", "exhibit2", "exhibit3", "exhibit4", "flower"]


def spam(c=Fraction(1, 3)):
    """Spam filtering: guess spam / not spam, or pay ``c`` to see the label."""
    c = parse_rational(c)
    if not 0 <= c <= 1:
        raise GameError(f"spam: c must lie in [0, 1], got {c}")
    return make_game(f"spam({c})", [[0, 1], [1, 0], [c, c]], [[1, 1], [1, 1], [1, 2]], F=2)


def hopeless2x2():
    return make_game("hopeless2x2", [[0, 1], [1, 0]], [[1, 1], [1, 1]], F=1)


def exhibit1():
    h = Fraction(1, 2)
    return make_game("exhibit1", [[1, h, h, 0], [h, 1, 0, h]], [[1, 2, 1, 2], [1, 2, 1, 2]], F=2)


def exhibit2(c=Fraction(1, 3)):
    # spam with every feedback symbol shifted by one
    g = spam(c)
    return make_game(f"exhibit2({g.loss[2][0]})", g.loss, [[s + 1 for s in r] for r in g.feedback], F=2)


def exhibit3():
    h = Fraction(1, 2)
    return make_game("exhibit3", [[0, 1, 1], [1, 0, 1], [h, h, h]],
                     [[1, 1, 1], [1, 1, 1], [1, 2, 3]], F=3)


def exhibit4():
    h, q = Fraction(1, 2), Fraction(1, 4)
    loss = [[0, 1, 1], [1, 0, 1], [h, h, h], [3 * q, q, 3 * q], [1, h, h], [1, q, 3 * q]]
    # the printed feedback matrix has five rows; action 6 is given constant feedback
    feedback = [[1, 1, 1], [1, 1, 1], [1, 2, 3], [1, 1, 1], [1, 1, 1], [1, 1, 1]]
    return make_game("exhibit4", loss, feedback, F=3)


def flower(F=3):
    """Two actions, ``E = 2F - 2`` outcomes; the feedback count drives the regret."""
    F = int(F)
    if F < 2:
        raise GameError(f"flower: F must be >= 2, got {F}")
    E = 2 * F - 2
    loss = [[(i + 1) % 2 for i in range(E)], [i % 2 for i in range(E)]]
    row1 = [1] + [2 + (i - 1) // 2 for i in range(1, E - 1)] + [F]
    row2 = [1 + i // 2 for i in range(E)]
    return make_game(f"flower({F})", loss, [row1, row2], F=F)


FIXTURES = {
    "spam": spam,
    "hopeless2x2": hopeless2x2,
    "exhibit1": exhibit1,
    "exhibit2": exhibit2,
    "exhibit3": exhibit3,
    "exhibit4": exhibit4,
    "flower": flower,
}


def fixture(name, param=None):
    """Return a catalog game by name, e.g. ``fixture("spam", "1/3")``."""
    try:
        build = FIXTURES[name]
    except KeyError:
        raise GameError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None
    if param is None:
        return build()
    if name in ("hopeless2x2", "exhibit1", "exhibit3", "exhibit4"):
        raise GameError(f"fixture {name!r} takes no parameter")
    return build(param)
