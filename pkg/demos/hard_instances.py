"""
Why some games are hard
=======================

For a hard game we build two outcome distributions that produce the same
feedback law for every action near the boundary, yet disagree on which
action is better by a margin delta. No policy can tell them apart
cheaply, which forces regret of order n^(2/3).
"""
from fractions import Fraction

from partmon import fixture, flower_pair_envs, hard_pair_envs

game = fixture("spam", "3/5")
pair = hard_pair_envs(game, 0, 1, Fraction(1, 10))
print("center u    ", [str(x) for x in pair.u])
print("direction v ", [str(x) for x in pair.v])
print("u_a         ", [str(x) for x in pair.u_a])
print("u_b         ", [str(x) for x in pair.u_b])
print("gap         ", pair.gap)

# The flower family is easy, but its observation structure hides a pair of
# nearby distributions from the second action.
for F in (3, 5):
    u, u2 = flower_pair_envs(F, Fraction(1, 40))
    print(f"flower F={F}:", [str(x) for x in u], "vs", [str(x) for x in u2])
