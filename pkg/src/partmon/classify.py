"""Four-way classification of partial-monitoring games.

A game is *trivial* if it has no neighboring actions, *easy* if every
neighbor pair is locally observable, *hard* if every neighbor pair is
globally observable, and *hopeless* otherwise.
"""
from dataclasses import dataclass
from functools import lru_cache

from .geometry import action_taxonomy, neighbor_structure, point_local_cliques
from .observability import observability_report

__all__ = ["TRIVIAL", "EASY", "HARD", "HOPELESS", "VERDICTS", "GameClass", "GameAnalysis",
           "analyze", "classify"]

TRIVIAL = "trivial"
EASY = "easy"
HARD = "hard"
HOPELESS = "hopeless"
VERDICTS = (TRIVIAL, EASY, HARD, HOPELESS)


@dataclass(frozen=True)
class GameClass:
    verdict: str
    evidence: dict


@dataclass(frozen=True)
class GameAnalysis:
    """Everything the policies and reports need to know about a game."""

    game: object
    taxonomy: object
    neighbors: object
    point_local: object
    observability: object
    game_class: GameClass

    @property
    def verdict(self):
        return self.game_class.verdict


def _classify(tax, ns, obs):
    if not ns.neighbors:
        return GameClass(TRIVIAL, {"action": tax.pareto[0]})
    if obs.locally_observable:
        return GameClass(EASY, {"estimators": {p: o.local_estimator
                                               for p, o in obs.neighbor_pairs.items()}})
    if obs.globally_observable:
        return GameClass(HARD, {"pair": obs.first_failure("local")})
    return GameClass(HOPELESS, {"pair": obs.first_failure("global")})


@lru_cache(maxsize=128)
def analyze(game):
    tax = action_taxonomy(game)
    ns = neighbor_structure(game, tax)
    obs = observability_report(game, ns)
    return GameAnalysis(game, tax, ns, point_local_cliques(game, ns), obs, _classify(tax, ns, obs))


def classify(game):
    """Return the verdict with its evidence.

    >>> from partmon.fixtures import spam
    >>> classify(spam("3/5")).verdict, classify(spam("3/5")).evidence
    ('hard', {'pair': (0, 1)})
    """
    return analyze(game).game_class
