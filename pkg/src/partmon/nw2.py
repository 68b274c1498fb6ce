"""NeighborhoodWatch2 for locally observable games.

Each Pareto representative ``k`` runs exponential weights over its
neighborhood. The local distributions are stitched into a global one through
the stationary distribution of the row-stochastic matrix they form; mass is
then pushed onto degenerate actions (:func:`redistribute`) and mixed with
uniform exploration.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from .classify import EASY, TRIVIAL, analyze
from .policy import PolicyRefusal

__all__ = ["NW2Config", "NeighborhoodWatch2", "StationaryError", "stationary", "gth_solve",
           "redistribute", "nw2_init"]

logger = logging.getLogger(__name__)


class StationaryError(ArithmeticError):
    pass


@dataclass(frozen=True)
class NW2Config:
    """Learning rate ``eta``, exploration ``gamma`` and confidence ``delta``.

    Leave ``eta``/``gamma`` unset and give ``horizon`` to get the tuned
    values ``eta = sqrt(log(K/delta) / (n K)) / V`` and ``gamma = V K eta``.
    ``debiased=True`` drops the high-probability correction term (beta = 0).
    """

    eta: float | None = None
    gamma: float | None = None
    delta: float = 0.05
    horizon: int | None = None
    debiased: bool = False

    def resolve(self, V, K):
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        eta, gamma = self.eta, self.gamma
        if eta is None:
            if self.horizon is None:
                raise ValueError("give either eta or a horizon")
            eta = math.sqrt(math.log(K / self.delta) / (self.horizon * K)) / V
        if gamma is None:
            gamma = V * K * eta
            if gamma > 0.5:  # short horizons: cap the tuned value, keep eta V K <= gamma
                gamma = 0.5
                if self.eta is None:
                    eta = min(eta, gamma / (V * K))
        if eta <= 0 or not 0 < gamma <= 0.5:
            raise ValueError(f"need eta > 0 and gamma in (0, 1/2], got {eta}, {gamma}")
        return eta, gamma


_IRRED_CACHE = {}


def _irreducible(M):
    adj = M > 0
    key = (len(M), adj.tobytes())
    hit = _IRRED_CACHE.get(key)
    if hit is None:
        if len(_IRRED_CACHE) > 4096:
            _IRRED_CACHE.clear()
        hit = _IRRED_CACHE[key] = _strongly_connected(adj)
    return hit


def _strongly_connected(adj):
    n = len(adj)
    for graph in (adj, adj.T):
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        stack = [0]
        while stack:
            i = stack.pop()
            nxt = np.flatnonzero(graph[i] & ~seen)
            seen[nxt] = True
            stack.extend(nxt.tolist())
        if not seen.all():
            return False
    return True


def gth_solve(M):
    """Stationary distribution of an irreducible stochastic matrix (Grassmann–Taksar–Heyman).

    Only off-diagonal entries are used, so there is no cancellation.
    """
    A = np.array(M, dtype=float)
    n = len(A)
    for k in range(n - 1):
        scale = A[k, k + 1:].sum()
        A[k + 1:, k] /= scale
        A[k + 1:, k + 1:] += np.outer(A[k + 1:, k], A[k, k + 1:])
    x = np.zeros(n)
    x[-1] = 1.0
    for k in range(n - 2, -1, -1):
        x[k] = x[k + 1:] @ A[k + 1:, k]
    return x / x.sum()


def stationary(Q, support=None, tol=1e-12, max_iter=10**6):
    """Distribution ``x`` with ``x Q = x``, supported on ``support``.

    Irreducible chains are solved directly. Otherwise the limit of power
    iteration from the uniform distribution on ``support`` is returned,
    falling back to a least-squares solve if ``max_iter`` is reached.
    """
    Q = np.asarray(Q, dtype=float)
    idx = np.arange(len(Q)) if support is None else np.asarray(support)
    M = Q[np.ix_(idx, idx)]
    if _irreducible(M):
        x = gth_solve(M)
    else:
        x = np.full(len(idx), 1.0 / len(idx))
        for _ in range(max_iter):
            nxt = x @ M
            if np.abs(nxt - x).sum() <= tol:
                x = nxt
                break
            x = nxt
        else:
            n = len(idx)
            lhs = np.vstack([(np.eye(n) - M).T, np.ones(n)])
            x = np.linalg.lstsq(lhs, np.r_[np.zeros(n), 1.0], rcond=None)[0]
            x = np.clip(x, 0, None)
        x = x / x.sum()
    out = np.zeros(len(Q))
    out[idx] = x
    if np.abs(out @ Q - out).sum() > 1e-10:
        raise StationaryError("stationary distribution did not converge")
    return out


def redistribute(p, plan, K=None, skipped=None):
    """Move probability from Pareto pairs onto the degenerate actions between them.

    ``plan`` lists ``(d, a, b, alpha)`` with ``loss[d] = alpha loss[a] +
    (1 - alpha) loss[b]``, processed in order. Works on floats or Fractions.
    Degenerate actions whose pair has no mass are skipped (and appended to
    ``skipped`` if given).
    """
    K = len(p) if K is None else K
    q = list(p)
    for d, a, b, alpha in plan:
        denom = alpha * q[b] + (1 - alpha) * q[a]
        if denom == 0:
            logger.debug("redistribute: no mass on pair (%d, %d) for %d", a, b, d)
            if skipped is not None:
                skipped.append(d)
            continue
        ca = alpha * q[b] / denom
        cb = 1 - ca
        ratios = [p[x] / (q[x] * c) for x, c in ((a, ca), (b, cb)) if q[x] * c != 0]
        rho = min(ratios) / (2 * K)
        q[d] = rho * ca * q[a] + rho * cb * q[b]
        q[a] = (1 - rho * ca) * q[a]
        q[b] = (1 - rho * cb) * q[b]
    return np.array(q) if isinstance(p, np.ndarray) else q


class NeighborhoodWatch2:
    """The policy state; one instance per run.

    Public indices are those of the original game. Internally actions are
    renumbered over the playable set ``analysis.neighbors.playable``.
    """

    def __init__(self, game, analysis=None, config=NW2Config()):
        self.game = game
        self.analysis = analysis = analysis or analyze(game)
        self.config = config
        self.t = 1
        self.last = None
        if analysis.verdict == TRIVIAL:
            self.trivial_action = analysis.game_class.evidence["action"]
            self.playable = (self.trivial_action,)
            return
        self.trivial_action = None
        if analysis.verdict != EASY:
            a, b = analysis.observability.first_failure("local")
            raise PolicyRefusal(
                (a, b), f"{game.name} is not locally observable: pair ({a + 1}, {b + 1})")
        ns, obs = analysis.neighbors, analysis.observability
        self.playable = ns.playable
        loc = {a: j for j, a in enumerate(self.playable)}
        self.K = K = len(self.playable)
        self.A = np.array([loc[a] for a in ns.A])
        self.D = np.array([loc[d] for d in ns.D], dtype=int)
        self.V = float(obs.V)
        self.eta, self.gamma = config.resolve(self.V, K)

        F = game.F
        self.in_A = np.zeros(K, dtype=bool)
        self.in_A[self.A] = True
        self.hood = np.zeros((K, K), dtype=bool)  # hood[k, a]: a in N_k ∩ A
        self.v = np.zeros((K, K, K, F))  # v[a, k, c, f] estimates loss[a] - loss[k]
        self.pair_hood = np.zeros((K, K, K), dtype=bool)  # pair_hood[a, k, b]: b in N_ak
        for k in ns.A:
            for a in ns.N_action[k]:
                if a in ns.A:
                    self.hood[loc[k], loc[a]] = True
        for (a, b), o in obs.neighbor_pairs.items():
            if a in ns.A and b in ns.A:
                table = np.zeros((K, F))
                for (c, f), val in o.local_estimator.values.items():
                    table[loc[c], f] = float(val)
                self.v[loc[a], loc[b]] = table
                self.v[loc[b], loc[a]] = -table
                members = [loc[c] for c in ns.N(a, b)]
                self.pair_hood[loc[a], loc[b], members] = True
                self.pair_hood[loc[b], loc[a], members] = True

        self.plan = []
        pairs = sorted(p for p in ns.neighbors if p[0] in ns.A and p[1] in ns.A)
        for d in ns.D:
            a, b = next(p for p in pairs if d in ns.N(*p))
            self.plan.append((loc[d], loc[a], loc[b], ns.alpha[(a, b)][d]))
        self.plan_float = [(d, a, b, float(al)) for d, a, b, al in self.plan]
        self.cum = np.zeros((K, K))  # cumulative biased estimates, keyed [k, a]
        self.check_scale = self.eta * self.V * K <= self.gamma * (1 + 1e-12)

    @property
    def cumulative(self):
        """Cumulative estimates as ``{(k, a): value}`` in original action indices."""
        if self.trivial_action is not None:
            return {}
        return {(self.playable[k], self.playable[a]): self.cum[k, a]
                for k, a in zip(*np.nonzero(self.hood))}

    def q_matrix(self):
        K = self.K
        Q = np.zeros((K, K))
        W = np.where(self.hood, -self.eta * self.cum, -np.inf)
        rows = W[self.A]
        rows = np.exp(rows - rows.max(axis=1, keepdims=True))
        Q[self.A] = rows / rows.sum(axis=1, keepdims=True)
        if len(self.D):
            Q[np.ix_(self.D, self.A)] = 1.0 / len(self.A)
        return Q

    def distribution(self):
        """Return ``(Q, P_tilde, P)`` for the current round over the playable set."""
        Q = self.q_matrix()
        Pt = stationary(Q, self.A)
        bar = redistribute(Pt, self.plan_float, self.K)
        P = (1 - self.gamma) * bar + self.gamma / self.K
        self.last = (Q, Pt, P)
        return self.last

    def probabilities(self):
        """Sampling distribution over all actions of the original game."""
        out = np.zeros(self.game.K)
        if self.trivial_action is not None:
            out[self.trivial_action] = 1.0
            return out
        P = self.distribution()[2]
        out[list(self.playable)] = P
        return out

    def update(self, action, symbol):
        if self.trivial_action is not None:
            self.t += 1
            return
        if self.last is None:
            self.distribution()
        try:
            c = self.playable.index(action)
        except ValueError:
            raise ValueError(f"action {action + 1} is outside the playable set") from None
        _, Pt, P = self.last
        zhat = Pt[:, None] * self.v[:, :, c, symbol].T / P[c]
        if self.config.debiased:
            beta = 0.0
        else:
            inv = self.pair_hood.astype(float) @ (1.0 / P)  # inv[a, k] = sum_{b in N_ak} 1/P_b
            beta = self.eta * self.V ** 2 * Pt[:, None] ** 2 * inv.T
        zt = np.where(self.hood, zhat - beta, 0.0)
        zt[~self.in_A] = 0.0
        if self.check_scale:
            assert self.eta * np.abs(zhat[self.in_A]).max() <= 1 + 1e-9
        self.cum += zt
        self.zhat = zhat
        self.t += 1
        self.last = None


def nw2_init(game, analysis=None, config=NW2Config()):
    return NeighborhoodWatch2(game, analysis, config)
