"""Finite partial-monitoring games: geometry, observability, classification and policies."""
__version__ = "0.1.0"

from .classify import EASY, HARD, HOPELESS, TRIVIAL, GameAnalysis, GameClass, analyze, classify
from .envs import fixed_env, hard_pair_envs, flower_pair_envs, iid_env, regret, run_episode
from .fixtures import fixture
from .game import Game, GameError, load_game, make_game, parse_game, serialize_game, validate
from .nw2 import NW2Config, NeighborhoodWatch2, nw2_init
from .policy import PolicyRefusal
from .relexp3 import RelExp3, RXConfig, relexp3_init

__all__ = [
    "Game", "GameError", "GameAnalysis", "GameClass", "TRIVIAL", "EASY", "HARD", "HOPELESS",
    "analyze", "classify", "fixture", "load_game", "make_game", "parse_game", "serialize_game",
    "validate", "NW2Config", "NeighborhoodWatch2", "nw2_init", "RXConfig", "RelExp3",
    "relexp3_init", "PolicyRefusal", "iid_env", "fixed_env", "run_episode", "regret",
    "hard_pair_envs", "flower_pair_envs",
]
