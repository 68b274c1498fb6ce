"""
NeighborhoodWatch2 against RelExp3
==================================

Both policies run on the spam game with an inspection price of 1/3
against the same i.i.d. outcome stream. Regret is computed exactly
against the best fixed action in hindsight.
"""
from partmon import (NW2Config, NeighborhoodWatch2, RelExp3, fixture, iid_env, regret,
                     run_episode)

game = fixture("spam", "1/3")
env = iid_env(["3/10", "7/10"], seed=1)

for n in (1000, 4000, 16000):
    nw2 = NeighborhoodWatch2(game, config=NW2Config(horizon=n))
    rx = RelExp3(game)
    r1 = regret(game, run_episode(game, nw2, env, n, seed=1))
    r2 = regret(game, run_episode(game, rx, env, n, seed=1))
    print(f"n={n:6d}  nw2 regret={float(r1.value):8.1f}  relexp3 regret={float(r2.value):8.1f}")

# How often each action was played in the last run: the inspecting
# action (index 3, 1-based) is the one that reveals the outcome.
traj = run_episode(game, RelExp3(game), env, 16000, seed=1)
counts = [int((traj.actions == a).sum()) for a in range(game.K)]
print("action counts", counts)
