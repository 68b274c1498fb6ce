"""JSON-ready documents for analyses and verdicts.

Actions, outcomes and feedback symbols are numbered from 1 and rationals are
written as ``"p/q"`` strings, so documents can be diffed and reparsed exactly.
"""
from .classify import EASY, HARD, HOPELESS, TRIVIAL, analyze
from .game import format_rational

__all__ = ["estimator_document", "verdict_document", "analysis_document"]


def _q(x):
    return None if x is None else format_rational(x)


def _pair_key(pair):
    return f"{pair[0] + 1},{pair[1] + 1}"


def _labels(actions):
    return [a + 1 for a in sorted(actions)]


def estimator_document(est):
    """``{"c,f": "p/q"}`` over the nonzero entries; ``None`` if there is no estimator."""
    if est is None:
        return None
    return {f"{c + 1},{f + 1}": _q(v) for (c, f), v in sorted(est.values.items())}


def verdict_document(analysis):
    gc = analysis.game_class
    doc = {"game": analysis.game.name, "verdict": gc.verdict}
    if gc.verdict == TRIVIAL:
        doc["evidence"] = {"action": gc.evidence["action"] + 1}
    elif gc.verdict == EASY:
        doc["evidence"] = {"estimators": {_pair_key(p): estimator_document(e)
                                          for p, e in sorted(gc.evidence["estimators"].items())}}
    elif gc.verdict in (HARD, HOPELESS):
        a, b = gc.evidence["pair"]
        level = "locally" if gc.verdict == HARD else "globally"
        doc["evidence"] = {"pair": [a + 1, b + 1],
                           "reason": f"neighbor pair is not {level} observable"}
    return doc


def _pair_entries(pairs):
    out = {}
    for p, o in sorted(pairs.items()):
        out[_pair_key(p)] = {
            "globally": o.globally,
            "locally": o.locally,
            "pairwise": o.pairwise,
            "global_estimator": estimator_document(o.global_estimator),
            "local_estimator": estimator_document(o.local_estimator),
            "pairwise_estimator": estimator_document(o.pairwise_estimator),
        }
    return out


def analysis_document(game, analysis=None):
    analysis = analysis or analyze(game)
    tax, ns, pl, obs = analysis.taxonomy, analysis.neighbors, analysis.point_local, analysis.observability
    return {
        "game": game.name,
        "K": game.K,
        "E": game.E,
        "F": game.F,
        "verdict": verdict_document(analysis),
        "taxonomy": {
            "pareto": _labels(tax.pareto),
            "degenerate": _labels(tax.degenerate),
            "dominated": _labels(tax.dominated),
            "dimensions": {str(a + 1): d for a, d in enumerate(tax.dimensions)},
            "duplicates": [_labels(c) for c in tax.duplicate_classes if len(c) > 1],
        },
        "neighbors": {
            "pairs": [[a + 1, b + 1] for a, b in sorted(ns.neighbors)],
            "weak_pairs": [[a + 1, b + 1] for a, b in sorted(ns.weak_neighbors)],
            "N": {_pair_key(p): _labels(m) for p, m in sorted(ns.N_pair.items())},
            "alpha": {_pair_key(p): {str(d + 1): _q(al) for d, al in sorted(m.items())}
                      for p, m in sorted(ns.alpha.items()) if m},
            "playable": _labels(ns.playable),
            "representatives": _labels(ns.A),
            "degenerate_playable": _labels(ns.D),
        },
        "point_local": {
            "cliques": [_labels(c) for c in pl.cliques],
            "K_loc": pl.K_loc,
        },
        "observability": {
            "global": obs.globally_observable,
            "local": obs.locally_observable,
            "point_local": obs.point_locally_observable,
            "V": _q(obs.V),
            "V_loc": _q(obs.V_loc),
            "V_pair": {_pair_key(p): _q(v) for p, v in sorted(obs.V_pair.items())},
            "neighbor_pairs": _pair_entries(obs.neighbor_pairs),
            "weak_pairs": {_pair_key(p): {"pairwise": e is not None,
                                          "pairwise_estimator": estimator_document(e)}
                           for p, e in sorted(obs.weak_pairs.items())},
        },
    }
