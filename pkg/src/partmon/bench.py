"""Regret sweeps over horizons and seeds, and the log-log slope fit.

A sweep runs one episode per ``(n, seed index)`` cell. Cell ``i`` uses the
seed ``(base_seed, i)`` for every horizon, so longer runs of the same index
see the same environment stream. Cells are independent and may run in
worker processes; results are reduced in ``(n, seed)`` order.
"""
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .classify import analyze
from .envs import fixed_env, flower_pair_envs, hard_pair_envs, iid_env, regret, run_episode
from .fixtures import fixture
from .game import load_game, parse_rational
from .nw2 import NW2Config, NeighborhoodWatch2
from .relexp3 import RelExp3, RXConfig

__all__ = ["POLICIES", "resolve_game", "make_policy", "parse_env", "SweepSpec", "SweepResult",
           "run_cell", "sweep", "fit_slope"]

POLICIES = ("nw2", "nw2-debiased", "relexp3")

# mean regrets below this are lifted before taking logs so that zero or
# negative regret (e.g. a trivial game) gives a finite, flat fit
REGRET_FLOOR = 1.0


def resolve_game(ref):
    """A game from a file path or ``fixture:NAME[:PARAM]``."""
    if isinstance(ref, str) and ref.startswith("fixture:"):
        _, name, *rest = ref.split(":", 2)
        return fixture(name, rest[0] if rest else None)
    return load_game(ref)


def make_policy(name, game, n, overrides=None, analysis=None):
    """Build policy ``name`` for a run of ``n`` rounds.

    ``overrides`` may set ``eta``, ``gamma``, ``delta`` (nw2) and ``eta``,
    ``eps`` (relexp3). A relexp3 ``eta`` override is a constant rate.
    """
    o = {k: v for k, v in (overrides or {}).items() if v is not None}
    if name in ("nw2", "nw2-debiased"):
        cfg = NW2Config(eta=o.get("eta"), gamma=o.get("gamma"), delta=o.get("delta", 0.05),
                        horizon=n, debiased=name == "nw2-debiased")
        return NeighborhoodWatch2(game, analysis, cfg)
    if name == "relexp3":
        eta = o.get("eta")
        cfg = RXConfig(eps=o.get("eps", 0.25), eta=None if eta is None else _Constant(eta))
        return RelExp3(game, analysis, cfg)
    raise ValueError(f"unknown policy {name!r}; choose from {POLICIES}")


class _Constant:
    def __init__(self, value):
        self.value = value

    def __call__(self, t):
        return self.value


def parse_env(spec, game, seed=0):
    """Environment from a spec string.

    ``iid:u=P1,P2,...`` draws i.i.d. outcomes; ``seq:FILE`` replays 1-based
    outcomes from a file; ``hard:A,B,DELTA[,SIDE]`` uses the alternative
    ``SIDE`` (``a`` or ``b``) built for neighbor pair ``(A, B)``;
    ``flower:F,DELTA,SIDE`` uses ``u`` or ``u'`` of the flower construction.
    """
    kind, _, body = spec.partition(":")
    if kind == "iid":
        if not body.startswith("u="):
            raise ValueError("iid environment needs u=P1,P2,...")
        u = [parse_rational(x.strip()) for x in body[2:].split(",")]
        if len(u) != game.E:
            raise ValueError(f"u has {len(u)} entries, game has {game.E} outcomes")
        return iid_env(u, seed)
    if kind == "seq":
        text = Path(body).read_text()
        outcomes = [int(x) - 1 for x in text.replace(",", " ").split()]
        if any(not 0 <= i < game.E for i in outcomes):
            raise ValueError("outcome out of range in sequence file")
        return fixed_env(outcomes)
    if kind == "hard":
        parts = body.split(",")
        if len(parts) not in (3, 4):
            raise ValueError("hard environment is hard:A,B,DELTA[,SIDE]")
        a, b = int(parts[0]) - 1, int(parts[1]) - 1
        side = parts[3] if len(parts) == 4 else "a"
        hp = hard_pair_envs(game, a, b, parts[2])
        if side not in ("a", "b"):
            raise ValueError("side must be a or b")
        return iid_env(hp.u_a if side == "a" else hp.u_b, seed)
    if kind == "flower":
        parts = body.split(",")
        if len(parts) != 3:
            raise ValueError("flower environment is flower:F,DELTA,SIDE")
        u, u_prime = flower_pair_envs(int(parts[0]), parts[1])
        if len(u) != game.E:
            raise ValueError(f"flower({parts[0]}) has {len(u)} outcomes, game has {game.E}")
        sides = {"u": u, "u'": u_prime, "uprime": u_prime}
        if parts[2] not in sides:
            raise ValueError("side must be u or u'")
        return iid_env(sides[parts[2]], seed)
    raise ValueError(f"unknown environment kind {kind!r}")


@dataclass(frozen=True)
class SweepSpec:
    game: object
    policy: str
    env: str
    horizons: tuple
    seeds: int
    base_seed: int = 0
    overrides: tuple = ()
    out: str | None = None
    workers: int | None = None

    def __post_init__(self):
        hs = tuple(int(n) for n in self.horizons)
        object.__setattr__(self, "horizons", hs)
        if not hs or any(n < 1 for n in hs) or any(x >= y for x, y in zip(hs, hs[1:])):
            raise ValueError("horizons must be positive and strictly increasing")
        if self.seeds < 1:
            raise ValueError("seeds must be >= 1")
        if self.policy not in POLICIES:
            raise ValueError(f"unknown policy {self.policy!r}")
        if isinstance(self.overrides, dict):
            object.__setattr__(self, "overrides", tuple(sorted(self.overrides.items())))


@dataclass
class SweepResult:
    spec: SweepSpec
    regrets: dict  # (n, seed index) -> exact regret
    mean: dict = field(default_factory=dict)
    std: dict = field(default_factory=dict)
    slope: float = math.nan
    residual: float = math.nan

    def sweep_csv(self):
        lines = [f"# partmon {__version__} sweep", "n,seed,regret"]
        lines += [f"{n},{i},{float(r)!r}" for (n, i), r in sorted(self.regrets.items())]
        return "\n".join(lines) + "\n"

    def summary_csv(self):
        lines = [f"# partmon {__version__} summary", "n,mean_regret,std_regret"]
        lines += [f"{n},{self.mean[n]!r},{self.std[n]!r}" for n in sorted(self.mean)]
        return "\n".join(lines) + "\n"

    def report(self):
        s = self.spec
        return {
            "version": __version__,
            "game": s.game.name,
            "policy": s.policy,
            "env": s.env,
            "horizons": list(s.horizons),
            "seeds": s.seeds,
            "base_seed": s.base_seed,
            "mean_regret": {str(n): self.mean[n] for n in sorted(self.mean)},
            "fitted_slope": self.slope,
            "residual": self.residual,
            "complete": len(self.regrets) == len(s.horizons) * s.seeds,
        }

    def write(self, out):
        out = Path(out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "sweep.csv").write_text(self.sweep_csv())
        (out / "summary.csv").write_text(self.summary_csv())
        (out / "report.json").write_text(json.dumps(self.report(), indent=2) + "\n")


def fit_slope(ns, values):
    """Least-squares slope of ``log(values)`` against ``log(ns)`` and the residual norm."""
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    if len(x) < 2:
        raise ValueError("need at least two horizons to fit a slope")
    X = np.column_stack([x, np.ones_like(x)])
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    res = y - X @ coef
    return float(coef[0]), float(np.sqrt(res @ res))


def run_cell(game, policy, env, n, seed, overrides=()):
    """Regret of one episode; ``seed`` is an int or ``(base_seed, i)``."""
    analysis = analyze(game)
    pol = make_policy(policy, game, n, dict(overrides), analysis)
    traj = run_episode(game, pol, parse_env(env, game, seed), n, seed)
    return regret(game, traj).value


def _cell(args):
    spec, n, i = args
    return n, i, run_cell(spec.game, spec.policy, spec.env, n, (spec.base_seed, i), spec.overrides)


def _aggregate(spec, regrets):
    result = SweepResult(spec, dict(sorted(regrets.items())))
    for n in spec.horizons:
        vals = [float(r) for (m, _), r in result.regrets.items() if m == n]
        if vals:
            result.mean[n] = float(np.mean(vals))
            result.std[n] = float(np.std(vals, ddof=1)) if len(vals) > 1 else 0.0
    if len(result.mean) >= 2:
        ns = sorted(result.mean)
        result.slope, result.residual = fit_slope(
            ns, [max(result.mean[n], REGRET_FLOOR) for n in ns])
    return result


def sweep(spec):
    """Run every cell of ``spec``; writes outputs if ``spec.out`` is set.

    If a cell fails, whatever finished is written out before re-raising.
    """
    analyze(spec.game)  # fail early on refusals
    make_policy(spec.policy, spec.game, spec.horizons[0], dict(spec.overrides))
    cells = [(spec, n, i) for n in spec.horizons for i in range(spec.seeds)]
    workers = spec.workers or os.cpu_count() or 1
    regrets = {}
    try:
        if workers == 1:
            for c in cells:
                n, i, r = _cell(c)
                regrets[(n, i)] = r
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for n, i, r in pool.map(_cell, cells):
                    regrets[(n, i)] = r
    except BaseException:
        if spec.out is not None and regrets:
            _aggregate(spec, regrets).write(spec.out)
        raise
    result = _aggregate(spec, regrets)
    if spec.out is not None:
        result.write(spec.out)
    return result
