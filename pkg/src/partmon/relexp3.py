"""RelExp3 for point-locally observable games.

Exponential weights over loss *differences* measured against an anchor: the
action currently holding the most probability. Exploration is added only on
the actions needed to estimate the differences for arms that still have a
realistic chance of being played.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .classify import analyze
from .geometry import action_taxonomy, neighbor_structure, point_local_cliques
from .observability import NotObservableError, pairwise_estimator_bounded, solve_estimator
from .policy import PolicyRefusal

__all__ = ["RXConfig", "RelExp3", "relexp3_init"]


@dataclass(frozen=True)
class RXConfig:
    """``eps`` in (0, 1/2) sets the decay ``t^(-1/2-eps)`` of the forced exploration.

    ``eta``/``alpha`` may be callables ``t -> value`` overriding the default
    schedules.
    """

    eps: float = 0.25
    eta: object = None
    alpha: object = None

    def __post_init__(self):
        if not 0 < self.eps < 0.5:
            raise ValueError("eps must lie in (0, 1/2)")


class RelExp3:
    def __init__(self, game, analysis=None, config=RXConfig()):
        self.game = game
        self.config = config
        analysis = analysis or analyze(game)
        obs = analysis.observability
        bad = obs.first_failure("pairwise")
        if bad is not None:
            a, b = bad
            raise PolicyRefusal(
                bad, f"{game.name} is not point-locally observable: weak pair ({a + 1}, {b + 1})")

        keep = analysis.taxonomy.pareto
        self.actions = keep
        self.sub = sub = game.restricted(keep)
        tax = action_taxonomy(sub)
        ns = neighbor_structure(sub, tax)
        self.K = K = len(keep)
        self.K_loc = point_local_cliques(sub, ns).K_loc
        F = game.F

        self.v = np.zeros((K, K, K, F))  # v[a, b, c, f] estimates loss[a] - loss[b]
        self.S = np.zeros((K, K, K), dtype=bool)  # S[a, b]: actions needed for (a, b)
        V_ab = np.zeros((K, K))
        self.estimators = {}
        for a in range(K):
            for b in range(a + 1, K):
                if ns.are_weak_neighbors(a, b):
                    try:
                        est = pairwise_estimator_bounded(sub, a, b)
                    except NotObservableError:  # pragma: no cover - excluded above
                        raise PolicyRefusal((keep[a], keep[b]), "not pairwise observable") from None
                else:
                    est = solve_estimator(sub, a, b, range(K))
                    if est is None:
                        raise PolicyRefusal((keep[a], keep[b]),
                                            f"pair ({keep[a] + 1}, {keep[b] + 1}) is not observable")
                self.estimators[(a, b)] = est
                table = est.table(K, F)
                self.v[a, b], self.v[b, a] = table, -table
                members = sorted({a, b} | est.support)
                self.S[a, b, members] = self.S[b, a, members] = True
                V_ab[a, b] = V_ab[b, a] = float(est.norm)
        for a in range(K):
            self.S[a, a, a] = True
        self.V_ab = V_ab
        self.V = float(V_ab.max()) if K > 1 else 0.0
        weak = [float(self.estimators[p].norm) for p in ns.weak_neighbors]
        self.V_loc = max(weak, default=0.0)
        self.V_loc_exact = max((self.estimators[p].norm for p in ns.weak_neighbors), default=Fraction(0))
        self.L = np.zeros(K)
        self.t = 1
        self.last = None

    def eta(self, t):
        if self.config.eta is not None:
            return self.config.eta(t)
        K = self.K
        if K == 1:
            return 0.0
        first = 1 / (4 * K * self.V) if self.V > 0 else math.inf
        second = math.sqrt(math.log(K) / (2 * t * self.K_loc)) / (2 * self.V_loc) if self.V_loc > 0 else math.inf
        return min(first, second)

    def alpha(self, t):
        if self.config.alpha is not None:
            return self.config.alpha(t)
        return min(1 / (4 * self.K), t ** (-0.5 - self.config.eps))

    def distribution(self):
        """Return ``(P_tilde, B, M, S, gamma, P)`` for the current round."""
        t, K = self.t, self.K
        eta, alpha = self.eta(t), self.alpha(t)
        w = -eta * self.L
        w = np.exp(w - w.max())
        Pt = w / w.sum()
        B = int(np.argmax(Pt))
        if eta > 0:
            with np.errstate(divide="ignore"):
                M = np.flatnonzero(np.log(Pt) + eta * self.V_ab[:, B] / alpha > math.log(eta / t))
        else:
            M = np.arange(K)
        S = self.S[M, B].any(axis=0)
        vmax = self.V_ab[M, B].max() if len(M) else 0.0
        gamma = S * eta * vmax + alpha / K
        total = gamma.sum()
        assert total <= 1, f"exploration mass {total} exceeds 1"
        P = (1 - total) * Pt + gamma
        self.last = (Pt, B, M, np.flatnonzero(S), gamma, P, eta)
        return self.last[:6]

    def probabilities(self):
        out = np.zeros(self.game.K)
        out[list(self.actions)] = self.distribution()[5]
        return out

    def update(self, action, symbol):
        if self.last is None:
            self.distribution()
        Pt, B, M, S, gamma, P, eta = self.last
        c = self.actions.index(action)
        z = self.v[:, B, c, symbol] / P[c]
        if len(M):
            assert eta * np.abs(z[M]).max() <= 1 + 1e-9
        self.L += z
        self.zhat = z
        self.t += 1
        self.last = None


def relexp3_init(game, analysis=None, config=RXConfig()):
    return RelExp3(game, analysis, config)
