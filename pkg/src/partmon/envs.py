"""Oblivious environments, the episode runner and regret accounting.

Outcome sequences are drawn before the first round from the environment's
own random stream, so they cannot depend on what the learner does. The
learner's action sampling uses a separate stream derived from the run seed.
"""
import csv
import io
from collections import namedtuple
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .classify import analyze
from .exact import dot, matvec, project_onto_kernel, rank, solve_square
from .game import format_rational, parse_rational
from .geometry import _simplex_system

__all__ = [
    "ENV_TAG", "POLICY_TAG", "derive_seed", "Environment", "iid_env", "fixed_env", "Trajectory",
    "run_episode", "RegretReport", "regret", "HardPair", "hard_pair_envs", "flower_pair_envs",
    "write_trajectory_csv", "trajectory_csv",
]

# domain tags keep the outcome stream and the action stream of a run apart
ENV_TAG = 0x656E76
POLICY_TAG = 0x706F6C


def derive_seed(seed, tag):
    """Stream ``tag`` of the run identified by ``seed``.

    ``seed`` is an int or a tuple of ints (a sweep uses ``(base_seed, i)``
    for run ``i``). The entropy words ``[*seed, tag]`` are mixed by
    :class:`numpy.random.SeedSequence`, which is what the returned object is.
    """
    keys = seed if isinstance(seed, (tuple, list)) else (seed,)
    return np.random.SeedSequence([*map(int, keys), int(tag)])


@dataclass(frozen=True)
class Environment:
    """Either a fixed outcome list or i.i.d. draws from ``u`` with ``seed``."""

    kind: str
    sequence: tuple = ()
    u: tuple = ()
    seed: object = 0

    def outcomes(self, n):
        if self.kind == "fixed":
            if n > len(self.sequence):
                raise ValueError(f"sequence has {len(self.sequence)} outcomes, {n} requested")
            return np.array(self.sequence[:n], dtype=np.intp)
        rng = np.random.default_rng(derive_seed(self.seed, ENV_TAG))
        p = np.array([float(x) for x in self.u])
        return rng.choice(len(p), size=n, p=p / p.sum())


def iid_env(u, seed=0):
    """Outcomes drawn independently from the distribution ``u``."""
    u = tuple(parse_rational(x) if isinstance(x, str) else x for x in u)
    vals = np.array([float(x) for x in u])
    if (vals < 0).any() or not np.isclose(vals.sum(), 1.0, atol=1e-12):
        raise ValueError(f"not a distribution: {u}")
    return Environment("iid", u=u, seed=seed)


def fixed_env(outcomes):
    return Environment("fixed", sequence=tuple(int(i) for i in outcomes))


@dataclass
class Trajectory:
    actions: np.ndarray
    outcomes: np.ndarray
    feedback: np.ndarray
    probabilities: list | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.actions)

    def cumulative_learner_loss(self, game):
        return np.cumsum(game.loss_array[self.actions, self.outcomes])


def run_episode(game, policy, env, n, seed=0, record_probabilities=False):
    """Play ``n`` rounds of ``policy`` against ``env``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    outcomes = env.outcomes(n)
    rng = np.random.default_rng(derive_seed(seed, POLICY_TAG))
    draws = rng.random(n)
    fb = game.feedback_array
    actions = np.empty(n, dtype=np.intp)
    symbols = np.empty(n, dtype=np.intp)
    probs = [] if record_probabilities else None
    last = game.K - 1
    for t in range(n):
        P = policy.probabilities()
        cdf = np.cumsum(P)
        a = min(int(np.searchsorted(cdf, draws[t] * cdf[-1], side="right")), last)
        while P[a] == 0:  # guard against landing on a zero-mass action through rounding
            a -= 1
        phi = int(fb[a, outcomes[t]])
        policy.update(a, phi)
        actions[t], symbols[t] = a, phi
        if probs is not None:
            probs.append(P)
    return Trajectory(actions, outcomes, symbols, probs)


RegretReport = namedtuple("RegretReport", "value best_action")


def regret(game, traj):
    """Exact regret against the best fixed action in hindsight (ties: lowest index)."""
    counts = np.zeros((game.K, game.E), dtype=np.int64)
    np.add.at(counts, (traj.actions, traj.outcomes), 1)
    outcome_counts = counts.sum(axis=0)
    learner = sum(int(counts[a, i]) * game.loss[a][i]
                  for a, i in zip(*np.nonzero(counts)))
    totals = [sum(int(outcome_counts[i]) * game.loss[a][i] for i in range(game.E))
              for a in range(game.K)]
    best = min(range(game.K), key=lambda a: (totals[a], a))
    return RegretReport(Fraction(learner) - totals[best], best)


def trajectory_csv(game, traj, version="0.1.0"):
    buf = io.StringIO()
    buf.write(f"# partmon {version} trajectory\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "action", "outcome", "feedback", "cum_loss"])
    cum = Fraction(0)
    for t, (a, i, f) in enumerate(zip(traj.actions, traj.outcomes, traj.feedback), start=1):
        cum += game.loss[a][i]
        w.writerow([t, int(a) + 1, int(i) + 1, int(f) + 1, format_rational(cum)])
    rep = regret(game, traj)
    buf.write(f"# summary: regret={format_rational(rep.value)} best_action={rep.best_action + 1}\n")
    return buf.getvalue()


def write_trajectory_csv(path, game, traj, version="0.1.0"):
    with open(path, "w", newline="") as fh:
        fh.write(trajectory_csv(game, traj, version))


@dataclass(frozen=True)
class HardPair:
    """Two outcome distributions the learner cannot tell apart through ``N_ab``."""

    pair: tuple
    u: tuple
    v: tuple
    delta: Fraction
    u_a: tuple
    u_b: tuple
    gap: Fraction | None
    S: tuple


def _vertices(game, actions):
    """Vertices of the joint cell of ``actions`` by brute force over tight constraint sets."""
    E = game.E
    A_ub, _, _, _ = _simplex_system(game, actions)
    cons = [list(r) for r in A_ub] + [[-Fraction(int(i == j)) for j in range(E)] for i in range(E)]
    ones = [Fraction(1)] * E
    found = set()
    for tight in combinations(range(len(cons)), E - 1):
        M = [cons[k] for k in tight] + [ones]
        if rank(M) < E:
            continue
        x = solve_square(M, [Fraction(0)] * (E - 1) + [Fraction(1)])
        if all(dot(r, x) <= 0 for r in cons):
            found.add(tuple(x))
    return sorted(found)


def hard_pair_envs(game, a, b, delta, analysis=None):
    """Alternative environments for a neighbor pair that is not locally observable."""
    analysis = analysis or analyze(game)
    ns = analysis.neighbors
    pair = (min(a, b), max(a, b))
    if pair not in ns.neighbors:
        raise ValueError(f"actions {a + 1} and {b + 1} are not neighbors")
    if analysis.observability.neighbor_pairs[pair].locally:
        raise ValueError(f"pair ({a + 1}, {b + 1}) is locally observable")
    delta = parse_rational(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    E = game.E
    verts = _vertices(game, pair)
    u = [sum(x[i] for x in verts) / len(verts) for i in range(E)]
    members = sorted(ns.N(a, b))
    S = [[Fraction(int(game.feedback[c][i] == f)) for i in range(E)]
         for c in members for f in range(game.F)]
    diff = [x - y for x, y in zip(game.loss[a], game.loss[b])]
    w = project_onto_kernel(S, diff, E)
    norm = dot(w, diff)
    if norm == 0:
        raise ValueError(f"pair ({a + 1}, {b + 1}) is locally observable")
    v = [x / norm for x in w]
    u_a = [x - delta * y for x, y in zip(u, v)]
    u_b = [x + delta * y for x, y in zip(u, v)]
    if min(u_a) <= 0 or min(u_b) <= 0:
        raise ValueError(f"delta={delta} too large: alternatives leave the interior of the simplex")
    others = [c for c in range(game.K) if c not in ns.N(a, b)]
    gap = min((dot([x - y for x, y in zip(game.loss[c], game.loss[a])], u) for c in others),
              default=None)
    hp = HardPair((a, b), tuple(u), tuple(v), delta, tuple(u_a), tuple(u_b), gap,
                  tuple(map(tuple, S)))
    assert not any(matvec(S, v)) and dot(v, diff) == 1
    assert matvec(S, u_a) == matvec(S, u_b)
    return hp


def flower_pair_envs(F, delta):
    """Indistinguishable outcome distributions ``(u, u')`` for the ``flower(F)`` game.

    Under action 2 both produce the same feedback law; action 1 separates
    them only through the first and last outcomes.
    """
    F = int(F)
    if F < 2:
        raise ValueError("F must be >= 2")
    delta = parse_rational(delta)
    E = 2 * F - 2
    p = Fraction(1, 2) - (E - 2) * delta / 2
    u = [p + delta] + [delta * (1 - (-1) ** i) for i in range(2, E)] + [p - delta]
    if E == 2:
        u = [p + delta, p - delta]
    u_prime = [x + 2 * (-1) ** i * delta for i, x in enumerate(u, start=1)]
    if min(u) < 0 or min(u_prime) < 0:
        raise ValueError(f"delta={delta} too large for F={F}")
    assert sum(u) == 1 and sum(u_prime) == 1
    return tuple(u), tuple(u_prime)
