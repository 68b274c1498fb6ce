from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from scipy.optimize import linprog

from partmon import fixture
from partmon.geometry import action_taxonomy, neighbor_structure
from partmon.observability import (NotObservableError, observability_report,
                                   pairwise_estimator_bounded, signal_matrix, solve_estimator,
                                   stacked_signal_matrix)

from .strategies import games


def oracle_min_norm(game, a, b, support):
    """Minimum sup-norm of an estimator supported on ``support`` (scipy), or None."""
    keys = [(c, f) for c in sorted(support) for f in range(game.F)]
    n = len(keys)
    A_eq = np.zeros((game.E, n + 1))
    for i in range(game.E):
        for j, (c, f) in enumerate(keys):
            A_eq[i, j] = float(game.feedback[c][i] == f)
    b_eq = game.loss_array[a] - game.loss_array[b]
    A_ub = []
    for j in range(n):
        for s in (1, -1):
            row = np.zeros(n + 1)
            row[j], row[n] = s, -1
            A_ub.append(row)
    res = linprog(np.r_[np.zeros(n), 1.0], A_ub=np.array(A_ub), b_ub=np.zeros(len(A_ub)),
                  A_eq=A_eq, b_eq=b_eq, bounds=[(None, None)] * n + [(0, None)], method="highs")
    return None if res.status == 2 else res.fun


def in_row_space(game, a, b, support):
    S = stacked_signal_matrix(game, support).astype(float)
    d = game.loss_array[a] - game.loss_array[b]
    x = np.linalg.lstsq(S.T, d, rcond=None)[0]
    return np.allclose(S.T @ x, d, atol=1e-9)


def test_signal_matrix_columns_are_indicators():
    g = fixture("exhibit3")
    S = signal_matrix(g, 2)
    assert (S == np.eye(3, dtype=int)).all()
    assert (signal_matrix(g, 0).sum(axis=0) == 1).all()


def test_spam_local_estimator():
    g = fixture("spam", "1/3")
    est = solve_estimator(g, 0, 2, neighbor_structure(g).N(0, 2))
    assert est.values == {(0, 0): Fraction(1, 6), (2, 0): Fraction(-1, 2), (2, 1): Fraction(1, 2)}
    rep = observability_report(g)
    assert rep.V == Fraction(1, 2) and rep.V_loc == Fraction(1, 2)


def test_spam_hard_is_global_only():
    rep = observability_report(fixture("spam", "3/5"))
    o = rep.neighbor_pairs[(0, 1)]
    assert o.globally and not o.locally and not o.pairwise
    assert rep.first_failure("local") == (0, 1)


def test_hopeless_has_no_estimator():
    rep = observability_report(fixture("hopeless2x2"))
    assert not rep.globally_observable
    assert rep.first_failure("global") == (0, 1)


@pytest.mark.parametrize("name", ["exhibit3", "exhibit4"])
def test_weak_pair_not_pairwise(name):
    rep = observability_report(fixture(name))
    assert rep.weak_pairs[(0, 1)] is None
    assert rep.first_failure("pairwise") == (0, 1)


def test_every_estimator_satisfies_identity_exactly(named_game):
    rep = observability_report(named_game)
    ests = [e for o in rep.neighbor_pairs.values()
            for e in (o.global_estimator, o.local_estimator, o.pairwise_estimator) if e is not None]
    ests += [e for e in rep.weak_pairs.values() if e is not None]
    for e in ests:
        assert e.residuals(named_game) == [0] * named_game.E
        assert e.negated().is_valid(named_game)


@given(games(max_K=4, max_E=3))
def test_existence_matches_row_space(g):
    ns = neighbor_structure(g)
    for a, b in ns.neighbors:
        for support in (range(g.K), ns.N(a, b), (a, b)):
            est = solve_estimator(g, a, b, support)
            assert (est is not None) == in_row_space(g, a, b, support)


@given(games(max_K=4, max_E=3))
def test_estimators_have_minimal_norm(g):
    tax = action_taxonomy(g)
    for a in tax.pareto:
        for b in tax.pareto:
            if a < b:
                est = solve_estimator(g, a, b, range(g.K))
                ref = oracle_min_norm(g, a, b, range(g.K))
                if est is None:
                    assert ref is None
                else:
                    assert est.is_valid(g)
                    assert float(est.norm) == pytest.approx(ref, abs=1e-9)


@given(games(max_K=3, max_E=3, max_F=3))
def test_bounded_pairwise_construction(g):
    for a in range(g.K):
        for b in range(a + 1, g.K):
            reference = solve_estimator(g, a, b, (a, b))
            try:
                est = pairwise_estimator_bounded(g, a, b)
            except NotObservableError:
                assert reference is None
                continue
            assert reference is not None
            assert est.is_valid(g)
            assert est.support <= {a, b}
            assert est.norm <= 1 + g.F


@pytest.mark.parametrize("F", [2, 3, 5, 8])
def test_bounded_construction_on_flower(F):
    g = fixture("flower", F)
    est = pairwise_estimator_bounded(g, 0, 1)
    assert est.is_valid(g) and est.norm <= 1 + F
    assert est.norm == F - 1
