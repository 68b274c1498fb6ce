"""What the episode runner expects from a policy.

A policy exposes ``probabilities()`` (a distribution over all actions of the
game for the current round) and ``update(action, symbol)``, called once per
round with the sampled action and the observed feedback symbol.
"""

__all__ = ["PolicyRefusal", "FixedAction"]


class PolicyRefusal(ValueError):
    """The policy cannot be run on this game; ``pair`` names the witness."""

    def __init__(self, pair, message):
        self.pair = pair
        super().__init__(message)


class FixedAction:
    def __init__(self, K, action):
        self.K = K
        self.action = action

    def probabilities(self):
        import numpy as np

        out = np.zeros(self.K)
        out[self.action] = 1.0
        return out

    def update(self, action, symbol):
        pass
