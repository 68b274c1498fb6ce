import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from partmon import fixture
from partmon.bench import SweepSpec, fit_slope, make_policy, parse_env, resolve_game, sweep

NS = [2**10, 2**12, 2**14, 2**16]


@given(st.floats(0.01, 100), st.floats(-1, 2))
def test_slope_of_exact_power_laws(c, k):
    slope, res = fit_slope(NS, [c * n**k for n in NS])
    assert slope == pytest.approx(k, abs=1e-12)
    assert res <= 1e-12


def test_slope_needs_two_points():
    with pytest.raises(ValueError):
        fit_slope([4], [1.0])


def test_linear_and_root_laws():
    assert fit_slope(NS, [3.0 * n for n in NS])[0] == pytest.approx(1.0, abs=1e-12)
    assert fit_slope(NS, [3.0 * np.sqrt(n) for n in NS])[0] == pytest.approx(0.5, abs=1e-12)


def test_trivial_game_has_flat_slope():
    spec = SweepSpec(fixture("spam", "0"), "nw2", "iid:u=1/2,1/2", (16, 64, 256), 3, workers=1)
    res = sweep(spec)
    assert res.slope == pytest.approx(0.0, abs=1e-12)
    assert all(r == 0 for r in res.regrets.values())


def test_sweep_outputs_are_reproducible(tmp_path):
    g = fixture("spam", "1/3")
    outs = []
    for k in range(2):
        spec = SweepSpec(g, "relexp3", "iid:u=0.3,0.7", (32, 128), 3, base_seed=5,
                         out=str(tmp_path / f"r{k}"), workers=1)
        sweep(spec)
        outs.append([(tmp_path / f"r{k}" / f).read_text() for f in ("sweep.csv", "summary.csv")])
    assert outs[0] == outs[1]
    sweep_lines = outs[0][0].splitlines()
    assert sweep_lines[1] == "n,seed,regret" and len(sweep_lines) == 2 + 6
    assert outs[0][1].splitlines()[1] == "n,mean_regret,std_regret"
    report = json.loads((tmp_path / "r0" / "report.json").read_text())
    assert "fitted_slope" in report and report["complete"]


def test_parallel_sweep_matches_serial():
    g = fixture("spam", "1/3")
    a = sweep(SweepSpec(g, "nw2", "iid:u=0.3,0.7", (32, 64), 2, workers=1))
    b = sweep(SweepSpec(g, "nw2", "iid:u=0.3,0.7", (32, 64), 2, workers=2))
    assert a.regrets == b.regrets


def test_cells_share_seed_across_horizons():
    g = fixture("spam", "1/3")
    env_a = parse_env("iid:u=0.3,0.7", g, (0, 1))
    env_b = parse_env("iid:u=0.3,0.7", g, (0, 1))
    assert (env_a.outcomes(64)[:32] == env_b.outcomes(32)).all()


@pytest.mark.parametrize("horizons,seeds,policy", [((), 1, "nw2"), ((10, 10), 1, "nw2"),
                                                    ((10, 5), 1, "nw2"), ((10,), 0, "nw2"),
                                                    ((10,), 1, "exp3")])
def test_spec_validation(horizons, seeds, policy):
    with pytest.raises(ValueError):
        SweepSpec(fixture("spam", "1/3"), policy, "iid:u=1/2,1/2", horizons, seeds)


def test_failed_cell_flushes_partial_results(tmp_path, monkeypatch):
    import partmon.bench as bench

    calls = []
    real = bench.run_cell

    def flaky(game, policy, env, n, seed, overrides=()):
        calls.append(n)
        if n == 64:
            raise ArithmeticError("boom")
        return real(game, policy, env, n, seed, overrides)

    monkeypatch.setattr(bench, "run_cell", flaky)
    spec = SweepSpec(fixture("spam", "1/3"), "nw2", "iid:u=0.3,0.7", (32, 64), 2,
                     out=str(tmp_path), workers=1)
    with pytest.raises(ArithmeticError):
        sweep(spec)
    report = json.loads((tmp_path / "report.json").read_text())
    assert not report["complete"]
    assert len((tmp_path / "sweep.csv").read_text().splitlines()) == 2 + 2


def test_env_specs(tmp_path):
    g = fixture("spam", "3/5")
    assert parse_env("hard:1,2,1/10", g).u[0] == pytest.approx(0.55)
    assert parse_env("hard:1,2,1/10,b", g).u[0] == pytest.approx(0.45)
    seq = tmp_path / "seq.txt"
    seq.write_text("1 2 2,1\n")
    assert list(parse_env(f"seq:{seq}", g).outcomes(4)) == [0, 1, 1, 0]
    fl = fixture("flower", 3)
    assert len(parse_env("flower:3,1/20,u'", fl).u) == 4
    for bad in ("iid:0.5,0.5", "iid:u=1", "nope:1", "hard:1,2", "flower:3,1/20,x", "flower:4,1/20,u"):
        with pytest.raises(ValueError):
            parse_env(bad, fl if bad.startswith("flower") else g)


def test_resolve_game(tmp_path):
    assert resolve_game("fixture:spam:1/3") == fixture("spam", "1/3")
    assert resolve_game("fixture:exhibit4") == fixture("exhibit4")


def test_make_policy_overrides():
    g = fixture("spam", "1/3")
    pol = make_policy("nw2", g, 100, {"eta": 0.01, "gamma": 0.2})
    assert (pol.eta, pol.gamma) == (0.01, 0.2)
    assert make_policy("nw2-debiased", g, 100).config.debiased
    rx = make_policy("relexp3", g, 100, {"eta": 0.02, "eps": 0.1})
    assert rx.eta(50) == 0.02 and rx.config.eps == 0.1
    with pytest.raises(ValueError):
        make_policy("exp3", g, 100)
