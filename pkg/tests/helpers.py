"""Checks shared by the policy tests and the acceptance gate."""
import copy

import numpy as np


def advance(policy, game, rounds, rng):
    """Play ``rounds`` rounds against uniformly random outcomes."""
    fb = game.feedback_array
    for _ in range(rounds):
        P = policy.probabilities()
        a = int(rng.choice(game.K, p=P / P.sum()))
        i = int(rng.integers(game.E))
        policy.update(a, int(fb[a, i]))


def randomize_nw2_state(policy, rng, scale=3.0):
    """Random cumulative estimates: gives a random Q and hence a random stationary P~."""
    policy.cum = np.where(policy.hood, rng.normal(scale=scale, size=policy.cum.shape) / policy.eta, 0.0)


def redistribution_slack(policy, us):
    """Smallest slack over the five redistribution properties at the current round.

    Negative values are violations. Also returns the largest loss-vector
    conservation error of the redistribution step alone.
    """
    from partmon.nw2 import redistribute

    Q, Pt, P = policy.distribution()
    K, gamma = policy.K, policy.gamma
    L = policy.game.loss_array[list(policy.playable)]
    A = list(policy.A)
    slack = {}
    slack["a"] = min(P[a] - Pt[a] / 4 for a in A)
    vals = L @ np.asarray(us).T  # playable x draws
    slack["b"] = float(np.min(gamma - np.abs((P - Pt) @ vals)))
    c = np.inf
    for k in A:
        for a in np.flatnonzero(policy.hood[k]):
            for b in np.flatnonzero(policy.pair_hood[k, a]):
                if b in (k, a) or not np.array_equal(L[b], L[k]) and not np.array_equal(L[b], L[a]):
                    c = min(c, P[b] - Pt[k] * Q[k, a] / (4 * K))
    slack["c"] = c
    slack["d"] = float(np.min(P - gamma / K))
    e = np.inf
    for k in A:
        for d in range(K):
            if np.array_equal(L[d], L[k]):
                e = min(e, P[d] - Pt[k] / (4 * K))
    slack["e"] = e
    bar = redistribute(Pt, policy.plan_float, K)
    conservation = float(np.abs(bar @ L - Pt @ L).max())
    return slack, conservation


def unbiasedness_error(policy, game, kind):
    """Largest gap between the expected estimate and the true loss difference.

    Every estimate is produced by calling ``update`` itself, so this exercises
    the code that runs online; the policy state is rolled back after each
    probe.
    """
    P_full = policy.probabilities()
    fb = game.feedback_array
    worst = 0.0
    for i in range(game.E):
        expected = 0.0
        for c in np.flatnonzero(P_full > 0):
            saved = {k: copy.copy(v) for k, v in vars(policy).items()}
            policy.update(int(c), int(fb[c, i]))
            expected = expected + P_full[c] * policy.zhat
            vars(policy).update(saved)
        if kind == "nw2":
            Pt = policy.last[1]
            L = game.loss_array[list(policy.playable), i]
            target = Pt[:, None] * (L[None, :] - L[:, None])  # [k, a] = P~_k (l_a - l_k)
            mask = policy.hood
            worst = max(worst, float(np.abs((expected - target)[mask]).max()))
        else:
            B = policy.last[1]
            L = game.loss_array[list(policy.actions), i]
            worst = max(worst, float(np.abs(expected - (L - L[B])).max()))
    return worst
