"""Exact cell decomposition of the outcome simplex.

The cell of action ``a`` is the set of outcome distributions ``u`` on which
``a`` has the smallest expected loss. Cells are polytopes described by
rational inequalities, so every question asked here (is it empty, what is
its dimension, does one cell contain another's boundary) is settled with the
exact simplex solver in :mod:`partmon.lp`.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .exact import dot, nullspace
from .lp import solve_lp

__all__ = [
    "DOMINATED", "DEGENERATE", "PARETO",
    "Cell", "Taxonomy", "NeighborStructure", "PointLocalStructure",
    "cell", "cell_dimension", "intersection_dimension", "intersection_point",
    "action_taxonomy", "neighbor_structure", "convex_coefficient", "point_local_cliques",
    "bron_kerbosch", "optimal_actions",
]

DOMINATED = "dominated"
DEGENERATE = "degenerate"
PARETO = "pareto"


@dataclass(frozen=True)
class Cell:
    action: int
    A_ub: tuple
    b_ub: tuple
    A_eq: tuple
    b_eq: tuple
    dimension: int


@dataclass(frozen=True)
class Taxonomy:
    kinds: tuple
    dimensions: tuple
    duplicate_classes: tuple
    A: tuple

    def of_kind(self, kind):
        return tuple(a for a, k in enumerate(self.kinds) if k == kind)

    @property
    def pareto(self):
        return self.of_kind(PARETO)

    @property
    def degenerate(self):
        return self.of_kind(DEGENERATE)

    @property
    def dominated(self):
        return self.of_kind(DOMINATED)

    def duplicates_of(self, a):
        return next(c for c in self.duplicate_classes if a in c)


@dataclass(frozen=True)
class NeighborStructure:
    """Neighbor relations between Pareto actions.

    ``N_pair[(a, b)]`` (``a < b``) is the set of actions whose cell contains
    ``C_a ∩ C_b``, and ``alpha[(a, b)][d]`` the weight with
    ``loss[d] = alpha * loss[a] + (1 - alpha) * loss[b]``.
    """

    neighbors: frozenset
    weak_neighbors: frozenset
    N_pair: dict
    N_action: dict
    alpha: dict
    playable: tuple
    A: tuple
    D: tuple

    def are_neighbors(self, a, b):
        return (min(a, b), max(a, b)) in self.neighbors

    def are_weak_neighbors(self, a, b):
        return (min(a, b), max(a, b)) in self.weak_neighbors

    def N(self, a, b):
        if a == b:
            return frozenset()
        return self.N_pair[(min(a, b), max(a, b))]


@dataclass(frozen=True)
class PointLocalStructure:
    cliques: tuple
    K_loc: int
    discrepancies: tuple = field(default=())


def _simplex_system(game, actions):
    """Inequalities describing the intersection of the cells of ``actions``."""
    E = game.E
    A_ub = []
    for a in actions:
        la = game.loss[a]
        for b in range(game.K):
            if b != a:
                row = tuple(x - y for x, y in zip(la, game.loss[b]))
                if any(row):
                    A_ub.append(row)
    A_ub = tuple(dict.fromkeys(A_ub))
    return A_ub, (Fraction(0),) * len(A_ub), ((Fraction(1),) * E,), (Fraction(1),)


def polytope_dimension(A_ub, b_ub, A_eq, b_eq, n):
    """Dimension of ``{x >= 0 : A_ub x <= b_ub, A_eq x = b_eq}``; -1 if empty.

    Grows a maximal affinely independent set of feasible points: for every
    direction orthogonal to the current hull (and to the equality rows), the
    set is pushed to its extremes; any extreme point off the hull extends it.
    Returns ``(dimension, point)`` with ``point`` feasible (or None).
    """
    zero = [0] * n
    res = solve_lp(zero, A_ub, b_ub, A_eq, b_eq)
    if not res.ok:
        return -1, None
    x0 = res.x
    dirs = []
    while True:
        grown = False
        for d in nullspace(list(A_eq) + dirs, n):
            base = dot(d, x0)
            for maximize in (True, False):
                r = solve_lp(d, A_ub, b_ub, A_eq, b_eq, maximize=maximize)
                if r.value != base:
                    dirs.append([p - q for p, q in zip(r.x, x0)])
                    grown = True
                    break
            if grown:
                break
        if not grown:
            return len(dirs), x0


@lru_cache(maxsize=4096)
def _intersection(game, actions):
    system = _simplex_system(game, actions)
    return system, polytope_dimension(*system, game.E)


def cell(game, a):
    system, (dim, _) = _intersection(game, (a,))
    return Cell(a, *system, dim)


def cell_dimension(game, a):
    """Exact dimension of the cell of ``a``; -1 when the cell is empty."""
    return _intersection(game, (a,))[1][0]


def intersection_dimension(game, actions):
    return _intersection(game, tuple(sorted(set(actions))))[1][0]


def intersection_point(game, actions):
    """Some point in the joint intersection of the cells, or None."""
    return _intersection(game, tuple(sorted(set(actions))))[1][1]


def optimal_actions(game, u):
    """Actions minimizing the expected loss under ``u`` (exact)."""
    vals = [dot(row, u) for row in game.loss]
    best = min(vals)
    return {a for a, v in enumerate(vals) if v == best}


@lru_cache(maxsize=256)
def action_taxonomy(game):
    """Classify each action as dominated, degenerate or Pareto optimal."""
    E = game.E
    dims = tuple(cell_dimension(game, a) for a in range(game.K))
    kinds = tuple(DOMINATED if d < 0 else PARETO if d == E - 1 else DEGENERATE for d in dims)
    classes = {}
    for a, row in enumerate(game.loss):
        classes.setdefault(row, []).append(a)
    dup = tuple(sorted(tuple(c) for c in classes.values()))
    A = tuple(sorted(c[0] for c in dup if kinds[c[0]] == PARETO))
    return Taxonomy(kinds, dims, dup, A)


def _contains(game, pair, c):
    """Whether ``C_a ∩ C_b`` lies inside the cell of ``c``.

    On the intersection ``a`` is optimal, so containment holds iff
    ``<loss[c] - loss[a], u>`` never turns positive there.
    """
    a = pair[0]
    if c in pair:
        return True
    (A_ub, b_ub, A_eq, b_eq), _ = _intersection(game, pair)
    obj = [x - y for x, y in zip(game.loss[c], game.loss[a])]
    res = solve_lp(obj, A_ub, b_ub, A_eq, b_eq, maximize=True)
    return res.value <= 0


def convex_coefficient(game, d, a, b):
    """The unique ``alpha`` in [0, 1] with ``loss[d] = alpha loss[a] + (1 - alpha) loss[b]``.

    Raises ValueError if no such coefficient exists.
    """
    la, lb, ld = game.loss[a], game.loss[b], game.loss[d]
    diff = [x - y for x, y in zip(la, lb)]
    rhs = [x - y for x, y in zip(ld, lb)]
    j = next((i for i, x in enumerate(diff) if x != 0), None)
    if j is None:
        raise ValueError(f"actions {a} and {b} have identical losses")
    alpha = rhs[j] / diff[j]
    if any(alpha * x != y for x, y in zip(diff, rhs)):
        raise ValueError(f"loss of {d} is not on the line through {a} and {b}")
    if not 0 <= alpha <= 1:
        raise ValueError(f"coefficient {alpha} for {d} outside [0, 1]")
    return alpha


@lru_cache(maxsize=256)
def neighbor_structure(game, tax=None):
    """Neighbors, weak neighbors, ``N_ab``, ``N_a`` and the playable set."""
    tax = tax or action_taxonomy(game)
    E = game.E
    pareto = tax.pareto
    neighbors, weak = set(), set()
    for a, b in combinations(pareto, 2):
        dim = intersection_dimension(game, (a, b))
        if dim >= 0:
            weak.add((a, b))
        if dim == E - 2:
            neighbors.add((a, b))
    N_pair, alpha = {}, {}
    for pair in sorted(neighbors):
        members = frozenset(c for c in range(game.K) if _contains(game, pair, c))
        N_pair[pair] = members
        alpha[pair] = {d: convex_coefficient(game, d, *pair) for d in sorted(members)}
    N_action = {}
    for a in pareto:
        N_action[a] = frozenset({a} | {b for p in neighbors if a in p for b in p})
    playable = tuple(sorted(set().union(*N_pair.values()))) if N_pair else ()
    A = tuple(a for a in tax.A if a in playable)
    D = tuple(a for a in playable if a not in A)
    return NeighborStructure(frozenset(neighbors), frozenset(weak), N_pair, N_action, alpha,
                             playable, A, D)


def bron_kerbosch(adjacency):
    """All maximal cliques of an undirected graph given as ``{node: set(nbrs)}``.

    Bron–Kerbosch with Tomita pivoting; cliques come out as sorted tuples in
    sorted order.
    """
    out = []

    def expand(R, P, X):
        if not P and not X:
            out.append(tuple(sorted(R)))
            return
        pivot = max(P | X, key=lambda u: len(adjacency[u] & P))
        for v in sorted(P - adjacency[pivot]):
            expand(R | {v}, P & adjacency[v], X & adjacency[v])
            P = P - {v}
            X = X | {v}

    expand(set(), set(adjacency), set())
    return sorted(out)


def point_local_cliques(game, ns=None):
    """Maximal sets of Pareto actions whose cells share a common point.

    Cliques of the weak-neighbor graph are candidates; each one is checked
    for a joint intersection point. A clique that fails is recorded in
    ``discrepancies`` and replaced by its maximal jointly-intersecting
    subsets.
    """
    ns = ns or neighbor_structure(game)
    tax = action_taxonomy(game)
    nodes = tax.pareto
    adj = {a: set() for a in nodes}
    for a, b in ns.weak_neighbors:
        adj[a].add(b)
        adj[b].add(a)
    found, discrepancies = set(), []
    for clique in bron_kerbosch(adj):
        if intersection_dimension(game, clique) >= 0:
            found.add(clique)
            continue
        discrepancies.append(clique)
        for size in range(len(clique) - 1, 0, -1):
            subs = [s for s in combinations(clique, size)
                    if intersection_dimension(game, s) >= 0
                    and not any(set(s) <= set(f) for f in found)]
            found.update(subs)
    maximal = sorted(c for c in found if not any(set(c) < set(o) for o in found))
    return PointLocalStructure(tuple(maximal), max((len(c) for c in maximal), default=0),
                               tuple(discrepancies))
