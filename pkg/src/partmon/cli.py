"""Command-line entry point: ``partmon {classify,analyze,run,sweep}``.

Exit codes
----------
0   success (analyze, run, sweep)
10-13  classify verdict: trivial, easy, hard, hopeless
2   bad command line
3   game file could not be parsed
4   game failed validation
5   the policy refuses this game
6   numerical failure during a run
"""
import argparse
import json
import sys

from . import __version__
from .bench import POLICIES, SweepSpec, make_policy, parse_env, resolve_game, sweep
from .classify import VERDICTS, analyze
from .envs import run_episode, trajectory_csv
from .export import analysis_document, verdict_document
from .game import GameError, GameValidationError
from .nw2 import StationaryError
from .policy import PolicyRefusal

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_VALIDATION = 4
EXIT_REFUSAL = 5
EXIT_NUMERIC = 6
VERDICT_EXIT = {v: 10 + i for i, v in enumerate(VERDICTS)}


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _overrides(args):
    return {k: getattr(args, k) for k in ("eta", "gamma", "delta", "eps")
            if getattr(args, k) is not None}


def cmd_classify(args):
    analysis = analyze(resolve_game(args.game))
    _emit(json.dumps(verdict_document(analysis), indent=2) + "\n", args.out)
    return VERDICT_EXIT[analysis.verdict]


def cmd_analyze(args):
    game = resolve_game(args.game)
    _emit(json.dumps(analysis_document(game), indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_run(args):
    game = resolve_game(args.game)
    if args.n is None:
        raise _Usage("run needs --n")
    policy = make_policy(args.policy, game, args.n, _overrides(args))
    env = parse_env(args.env, game, args.seed)
    traj = run_episode(game, policy, env, args.n, args.seed)
    _emit(trajectory_csv(game, traj, __version__), args.out)
    return EXIT_OK


def cmd_sweep(args):
    game = resolve_game(args.game)
    if not args.ns:
        raise _Usage("sweep needs --ns")
    spec = SweepSpec(game, args.policy, args.env, tuple(args.ns), args.seeds, args.seed,
                     tuple(sorted(_overrides(args).items())), args.out, args.workers)
    result = sweep(spec)
    if args.out is None:
        sys.stdout.write(result.summary_csv())
    sys.stdout.write(f"fitted_slope={result.slope!r} residual={result.residual!r}\n")
    return EXIT_OK


class _Usage(Exception):
    pass


def _ints(text):
    return [int(x) for x in text.split(",") if x]


def build_parser():
    p = argparse.ArgumentParser(prog="partmon", description="Analyze and play partial-monitoring games.")
    p.add_argument("--version", action="version", version=f"partmon {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--game", required=True, help="game JSON file or fixture:NAME[:PARAM]")
        sp.add_argument("--out", help="output file (run/classify/analyze) or directory (sweep)")

    for name, fn in (("classify", cmd_classify), ("analyze", cmd_analyze)):
        sp = sub.add_parser(name)
        common(sp)
        sp.set_defaults(func=fn)

    for name, fn in (("run", cmd_run), ("sweep", cmd_sweep)):
        sp = sub.add_parser(name)
        common(sp)
        sp.add_argument("--policy", choices=POLICIES, required=True)
        sp.add_argument("--env", required=True,
                        help="iid:u=...|seq:FILE|hard:A,B,DELTA[,SIDE]|flower:F,DELTA,SIDE")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--eta", type=float)
        sp.add_argument("--gamma", type=float)
        sp.add_argument("--delta", type=float)
        sp.add_argument("--eps", type=float)
        if name == "run":
            sp.add_argument("--n", type=int)
        else:
            sp.add_argument("--ns", type=_ints, help="comma-separated horizons")
            sp.add_argument("--seeds", type=int, default=20)
            sp.add_argument("--workers", type=int)
        sp.set_defaults(func=fn)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as exc:
        parser.error(str(exc))
    except GameValidationError as exc:
        print(f"error: invalid game: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (GameError, OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read game: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PolicyRefusal as exc:
        print(f"error: refused: {exc}", file=sys.stderr)
        return EXIT_REFUSAL
    except (StationaryError, ArithmeticError, AssertionError) as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
