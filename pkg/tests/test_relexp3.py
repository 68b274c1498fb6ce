import math

import numpy as np
import pytest

from partmon import PolicyRefusal, fixture, iid_env, regret, run_episode
from partmon.relexp3 import RelExp3, RXConfig

from .helpers import advance, unbiasedness_error

POINT_LOCAL = [("spam", "1/10"), ("spam", "1/3"), ("exhibit1", None), ("exhibit2", "1/3"),
               ("flower", 3), ("flower", 5)]


def test_spam_constants():
    pol = RelExp3(fixture("spam", "1/3"))
    assert (pol.K, pol.K_loc) == (3, 2)
    assert pol.V == 1.0
    assert pol.V_loc == pytest.approx(2 / 3)


def test_schedules():
    pol = RelExp3(fixture("spam", "1/3"))
    for t in (1, 2, 10, 1000):
        eta = min(1 / (4 * 3 * 1.0), math.sqrt(math.log(3) / (2 * t * 2)) / (2 * (2 / 3)))
        assert pol.eta(t) == pytest.approx(eta)
        assert pol.alpha(t) == pytest.approx(min(1 / 12, t ** -0.75))
    assert pol.eta(1) == pytest.approx(1 / 12) and pol.alpha(1) == pytest.approx(1 / 12)


def test_first_round_is_uniform():
    pol = RelExp3(fixture("spam", "1/3"))
    Pt, B, M, S, gamma, P = pol.distribution()
    assert np.allclose(Pt, 1 / 3) and B == 0
    assert list(M) == [0, 1, 2]
    assert np.allclose(P, 1 / 3)


def test_anchor_ties_break_to_lowest_index():
    pol = RelExp3(fixture("spam", "1/3"))
    pol.L[:] = [5.0, -1.0, -1.0]
    assert pol.distribution()[1] == 1


def test_override_schedules():
    cfg = RXConfig(eps=0.1, eta=lambda t: 0.01, alpha=lambda t: 0.05)
    pol = RelExp3(fixture("spam", "1/3"), config=cfg)
    assert pol.eta(7) == 0.01 and pol.alpha(7) == 0.05


@pytest.mark.parametrize("eps", [0, 0.5, -1])
def test_eps_must_be_in_open_interval(eps):
    with pytest.raises(ValueError):
        RXConfig(eps=eps)


@pytest.mark.parametrize("name,param", [("exhibit3", None), ("exhibit4", None),
                                        ("hopeless2x2", None), ("spam", "3/5")])
def test_refuses_games_with_unobservable_weak_pair(name, param):
    with pytest.raises(PolicyRefusal, match=r"weak pair \(1, 2\)") as info:
        RelExp3(fixture(name, param))
    assert info.value.pair == (0, 1)


@pytest.mark.parametrize("name,param", POINT_LOCAL)
def test_round_invariants(name, param):
    g = fixture(name, param)
    pol = RelExp3(g)
    rng = np.random.default_rng(0)
    for _ in range(200):
        Pt, B, M, S, gamma, P = pol.distribution()
        t = pol.t
        assert P.sum() == pytest.approx(1) and (P >= 0).all()
        assert (P >= pol.alpha(t) / pol.K - 1e-15).all()
        assert gamma.sum() <= 1
        assert Pt[B] == Pt.max() and B in M
        assert set(S) >= {B}
        advance(pol, g, 1, rng)


@pytest.mark.parametrize("name,param", POINT_LOCAL)
def test_estimates_are_unbiased(name, param):
    g = fixture(name, param)
    pol = RelExp3(g)
    rng = np.random.default_rng(1)
    for _ in range(10):
        advance(pol, g, int(rng.integers(1, 30)), rng)
        assert unbiasedness_error(pol, g, "relexp3") <= 1e-10


def test_estimator_tables_are_valid():
    g = fixture("spam", "1/10")
    pol = RelExp3(g)
    for (a, b), est in pol.estimators.items():
        assert est.is_valid(pol.sub)
        assert est.norm <= 1 + g.F


def test_dominated_actions_are_never_played():
    g = fixture("exhibit2", "1/3")
    pol = RelExp3(g)
    assert pol.actions == (0, 1, 2)
    g0 = fixture("spam", "0")
    pol0 = RelExp3(g0)
    assert list(pol0.probabilities()) == [0, 0, 1]
    traj = run_episode(g0, pol0, iid_env([0.5, 0.5], 3), 20, 3)
    assert set(traj.actions.tolist()) == {2}


def test_runs_are_reproducible():
    g = fixture("spam", "1/3")
    runs = [run_episode(g, RelExp3(g), iid_env([0.3, 0.7], 5), 300, 5) for _ in range(2)]
    assert (runs[0].actions == runs[1].actions).all()
    assert regret(g, runs[0]) == regret(g, runs[1])
