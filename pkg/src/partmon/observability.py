"""Signal matrices, observability tests and loss-difference estimators.

An estimator for the pair ``(a, b)`` is a function ``v(c, f)`` on
action/symbol pairs such that, for every outcome ``i``,
``sum_c v(c, feedback[c][i]) == loss[a][i] - loss[b][i]``. Playing
``A ~ P`` and returning ``v(A, Phi) / P[A]`` then gives an unbiased estimate
of the loss difference.
"""
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .geometry import neighbor_structure
from .lp import solve_lp

__all__ = [
    "EstimatorFunction", "PairObservability", "ObservabilityReport", "NotObservableError",
    "signal_matrix", "stacked_signal_matrix", "solve_estimator", "pairwise_estimator_bounded",
    "observability_report", "zero_estimator", "pareto_pairs_globally_observable",
]


class NotObservableError(ValueError):
    def __init__(self, pair, message):
        self.pair = pair
        super().__init__(message)


@dataclass(frozen=True)
class EstimatorFunction:
    """Estimator of ``loss[a] - loss[b]``; ``values`` keeps nonzero entries only."""

    pair: tuple
    values: dict = field(default_factory=dict)

    def __call__(self, c, f):
        return self.values.get((c, f), Fraction(0))

    @property
    def support(self):
        return frozenset(c for (c, _), v in self.values.items() if v != 0)

    @property
    def norm(self):
        return max((abs(v) for v in self.values.values()), default=Fraction(0))

    def negated(self):
        a, b = self.pair
        return EstimatorFunction((b, a), {k: -v for k, v in self.values.items()})

    def residuals(self, game):
        """Per-outcome ``sum_c v(c, Phi_ci) - (loss[a][i] - loss[b][i])``; all zero when valid."""
        a, b = self.pair
        return [sum((self(c, game.feedback[c][i]) for c in range(game.K)), Fraction(0))
                - (game.loss[a][i] - game.loss[b][i]) for i in range(game.E)]

    def is_valid(self, game):
        return not any(self.residuals(game))

    def table(self, K, F):
        out = np.zeros((K, F))
        for (c, f), v in self.values.items():
            out[c, f] = float(v)
        return out


def zero_estimator(a, b):
    return EstimatorFunction((a, b), {})


def signal_matrix(game, c):
    """``S[f, i] = 1`` iff action ``c`` shows symbol ``f`` under outcome ``i``."""
    S = np.zeros((game.F, game.E), dtype=int)
    S[game.feedback_array[c], np.arange(game.E)] = 1
    return S


def stacked_signal_matrix(game, actions):
    return np.vstack([signal_matrix(game, c) for c in sorted(actions)])


def _realized(game, support):
    return [(c, f) for c in sorted(support) for f in sorted(set(game.feedback[c]))]


def solve_estimator(game, a, b, support):
    """Minimum sup-norm estimator for ``(a, b)`` using only actions in ``support``.

    Returns None when ``loss[a] - loss[b]`` is not in the image of the stacked
    signal matrices of ``support``. Symbols that no outcome produces are left
    at zero.
    """
    if a == b:
        return zero_estimator(a, b)
    keys = _realized(game, support)
    n = len(keys)
    index = {k: j for j, k in enumerate(keys)}
    A_eq, b_eq = [], []
    for i in range(game.E):
        row = [0] * (n + 1)
        for c in support:
            row[index[(c, game.feedback[c][i])]] = 1
        A_eq.append(row)
        b_eq.append(game.loss[a][i] - game.loss[b][i])
    A_ub = []
    for j in range(n):
        for sign in (1, -1):
            row = [0] * (n + 1)
            row[j] = sign
            row[n] = -1
            A_ub.append(row)
    cost = [0] * n + [1]
    res = solve_lp(cost, A_ub, [0] * len(A_ub), A_eq, b_eq, free=range(n))
    if not res.ok:
        return None
    return EstimatorFunction((a, b), {k: res.x[j] for k, j in index.items() if res.x[j] != 0})


def pairwise_estimator_bounded(game, a, b):
    """Estimator supported on ``{a, b}`` with sup-norm at most ``1 + F``.

    Builds the bipartite graph whose nodes are ``(a, f)`` and ``(b, f)`` and
    whose edges are the outcomes; each edge fixes the sum of its endpoints.
    Values are propagated along a spanning tree of every connected component
    and then shifted (``+s`` on the ``a`` side, ``-s`` on the ``b`` side) so the
    ``a``-side values are centred around zero.

    Raises NotObservableError if the pair is not pairwise observable.
    """
    if a == b:
        return zero_estimator(a, b)
    delta = [x - y for x, y in zip(game.loss[a], game.loss[b])]
    adj = {}
    for i in range(game.E):
        u, w = (0, game.feedback[a][i]), (1, game.feedback[b][i])
        adj.setdefault(u, []).append((w, i))
        adj.setdefault(w, []).append((u, i))
    value, components = {}, []
    for root in sorted(adj):
        if root in value:
            continue
        value[root] = Fraction(0)
        comp = [root]
        queue = deque([root])
        while queue:
            node = queue.popleft()
            for other, i in adj[node]:
                if other not in value:
                    value[other] = delta[i] - value[node]
                    comp.append(other)
                    queue.append(other)
                elif value[other] + value[node] != delta[i]:
                    raise NotObservableError(
                        (a, b), f"actions {a + 1} and {b + 1} are not pairwise observable")
        components.append(comp)
    for comp in components:
        side_a = [value[n] for n in comp if n[0] == 0]
        shift = -(max(side_a) + min(side_a)) / 2
        for n in comp:
            value[n] += shift if n[0] == 0 else -shift
    actions = (a, b)
    values = {(actions[side], f): v for (side, f), v in value.items() if v != 0}
    return EstimatorFunction((a, b), values)


@dataclass(frozen=True)
class PairObservability:
    pair: tuple
    global_estimator: EstimatorFunction | None
    local_estimator: EstimatorFunction | None
    pairwise_estimator: EstimatorFunction | None

    @property
    def globally(self):
        return self.global_estimator is not None

    @property
    def locally(self):
        return self.local_estimator is not None

    @property
    def pairwise(self):
        return self.pairwise_estimator is not None


@dataclass(frozen=True)
class ObservabilityReport:
    neighbor_pairs: dict
    weak_pairs: dict
    V: Fraction | None
    V_pair: dict
    V_loc: Fraction | None

    @property
    def globally_observable(self):
        return all(p.globally for p in self.neighbor_pairs.values())

    @property
    def locally_observable(self):
        return all(p.locally for p in self.neighbor_pairs.values())

    @property
    def point_locally_observable(self):
        return all(e is not None for e in self.weak_pairs.values())

    def first_failure(self, level):
        """Lowest pair failing ``level`` in {"global", "local", "pairwise"}, or None."""
        if level == "pairwise":
            return next((p for p, e in sorted(self.weak_pairs.items()) if e is None), None)
        attr = "globally" if level == "global" else "locally"
        return next((p for p, o in sorted(self.neighbor_pairs.items()) if not getattr(o, attr)), None)


def observability_report(game, ns=None):
    ns = ns or neighbor_structure(game)
    everyone = range(game.K)
    neighbor_pairs = {}
    for a, b in sorted(ns.neighbors):
        neighbor_pairs[(a, b)] = PairObservability(
            (a, b),
            solve_estimator(game, a, b, everyone),
            solve_estimator(game, a, b, ns.N(a, b)),
            solve_estimator(game, a, b, (a, b)),
        )
    weak_pairs = {}
    for a, b in sorted(ns.weak_neighbors):
        if (a, b) in neighbor_pairs:
            weak_pairs[(a, b)] = neighbor_pairs[(a, b)].pairwise_estimator
        else:
            weak_pairs[(a, b)] = solve_estimator(game, a, b, (a, b))
    V_pair = {p: o.local_estimator.norm for p, o in neighbor_pairs.items() if o.locally}
    V = max(V_pair.values(), default=Fraction(0)) if len(V_pair) == len(neighbor_pairs) else None
    if all(e is not None for e in weak_pairs.values()):
        V_loc = max((e.norm for e in weak_pairs.values()), default=Fraction(0))
    else:
        V_loc = None
    return ObservabilityReport(neighbor_pairs, weak_pairs, V, V_pair, V_loc)


def pareto_pairs_globally_observable(game, tax):
    """Whether every pair of Pareto actions admits a global estimator."""
    return all(solve_estimator(game, a, b, range(game.K)) is not None
               for a, b in combinations(tax.pareto, 2))
