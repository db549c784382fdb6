"""Command-line front end.

Subcommands: analyze, correlated, ewl, verify, paper-check.  Exit codes:
0 success, 1 usage or input error, 2 a claimed equilibrium failed its
certification (verify / paper-check only).  All errors go to stderr.
Identical command line and seed produce byte-identical JSON; rationals are
serialized as "a/b" strings and floats carry 15 significant digits.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import checks
from .distributions import DistError, MixedProfile, g_mix
from .equilibria import mixed_nash_2x2, verify_classical_eq, verify_quantum_eq
from .ewl import (
    EwlConfig,
    HaarMixture,
    check_complete,
    check_proper,
    coverage_scan,
    g_mq,
    g_q,
    outcome_dist_mq,
    protocol_state,
)
from .games import Game, GameError, dominance, load_game, pure_nash_all
from .lp import LpError
from .mediated import (
    ResponseRule,
    aumann_check,
    ce_optimize,
    g_com,
    is_correlated_eq,
    referee_dist,
)
from .numeric import BadRationalError, parse_scalar, scalar_to_json
from .quantum import QuantumError, Unitary2, measure, su2_from_angles

_INPUT_ERRORS = (GameError, DistError, QuantumError, BadRationalError, LpError, ValueError)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _default_seed() -> int:
    env = os.environ.get("QGAMES_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise BadRationalError(f"QGAMES_SEED must be an integer, got {env!r}")


def _parse_gamma(text: str) -> float:
    if text == "max":
        return math.pi / 2
    try:
        gamma = float(text)
    except ValueError:
        raise BadRationalError(f"gamma must be a number or 'max', got {text!r}")
    return gamma


def _parse_csv_scalars(text: str, count: int, what: str):
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != count:
        raise BadRationalError(f"{what} needs {count} comma-separated values, got {text!r}")
    return tuple(parse_scalar(p) for p in parts)


def _parse_angles(text: str) -> Unitary2:
    theta, alpha, beta = (float(p) for p in _parse_csv_scalars(text, 3, "unitary angles"))
    return su2_from_angles(theta, alpha, beta)


def _round_floats(value):
    # Reports promise 15 significant digits for floats.
    if isinstance(value, float):
        return float(f"{value:.15g}")
    if isinstance(value, dict):
        return {k: _round_floats(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round_floats(v) for v in value]
    return value


def _emit_json(data) -> None:
    print(json.dumps(_round_floats(data), indent=2))


def _game_json(game: Game) -> dict:
    return {
        "name": game.name,
        "players": list(game.player_names),
        "strategies": [list(s) for s in game.strategy_names],
        "payoffs": [[[scalar_to_json(u) for u in cell] for cell in row] for row in game.payoffs],
    }


def _welfare_objective(game: Game, spec_text: str):
    if spec_text == "welfare":
        return [sum(game.payoff(p)) for p in game.profiles()]
    if spec_text == "player1":
        return [game.payoff(p)[0] for p in game.profiles()]
    if spec_text == "player2":
        return [game.payoff(p)[1] for p in game.profiles()]
    if spec_text.startswith("custom:"):
        return list(
            _parse_csv_scalars(spec_text[len("custom:"):], len(game.profiles()), "objective")
        )
    raise BadRationalError(
        f"objective must be welfare|player1|player2|custom:<values>, got {spec_text!r}"
    )


def _print_table(rows: list[tuple[str, str]]) -> None:
    width = max((len(k) for k, _ in rows), default=0)
    for key, value in rows:
        print(f"{key:<{width}}  {value}")


# analyze ---------------------------------------------------------------

def _mixed_eq_json(eq) -> dict:
    return {
        "row": [scalar_to_json(w) for w in eq.profile.row.weights],
        "col": [scalar_to_json(w) for w in eq.profile.col.weights],
        "payoff": [scalar_to_json(v) for v in eq.payoff],
        "degenerate": eq.degenerate,
        "note": eq.note,
    }


def cmd_analyze(args) -> int:
    game = load_game(args.game)
    report: dict = {"game": _game_json(game)}
    report["pure_nash"] = [
        {"profile": list(p), "label": game.label(p)} for p in pure_nash_all(game)
    ]
    report["dominance"] = [
        {
            "player": player + 1,
            "dominating": game.strategy_names[player][d.dominating],
            "dominated": game.strategy_names[player][d.dominated],
            "strict": d.strict,
        }
        for player in (0, 1)
        for d in dominance(game, player)
    ]
    if game.is_2x2():
        report["mixed_nash"] = [_mixed_eq_json(eq) for eq in mixed_nash_2x2(game)]
    value, rho = ce_optimize(game, _welfare_objective(game, "welfare"))
    report["correlated_welfare"] = {
        "value": scalar_to_json(value),
        "rho": [scalar_to_json(w) for w in rho.weights],
    }
    if args.mixed:
        p, q = _parse_csv_scalars(args.mixed, 2, "--mixed")
        profile = MixedProfile.from_weights((p, 1 - p), (q, 1 - q))
        report["mixed_payoff"] = {
            "row": [scalar_to_json(p), scalar_to_json(1 - p)],
            "col": [scalar_to_json(q), scalar_to_json(1 - q)],
            "payoff": [scalar_to_json(v) for v in g_mix(game, profile)],
        }
    if args.gamma and game.is_2x2():
        report["ewl"] = []
        for text in args.gamma:
            gamma = _parse_gamma(text)
            cfg = EwlConfig(game, gamma)
            complete_ok, gap = check_complete(cfg, 10)
            report["ewl"].append(
                {
                    "gamma": gamma,
                    "proper": check_proper(cfg),
                    "complete": complete_ok,
                    "complete_gap": gap,
                }
            )
    if args.json:
        _emit_json(report)
        return 0
    rows = [("game", game.name or args.game)]
    rows.append(
        (
            "pure nash",
            ", ".join(e["label"] for e in report["pure_nash"]) or "none",
        )
    )
    for d in report["dominance"]:
        kind = "strictly" if d["strict"] else "weakly"
        rows.append(
            (f"dominance p{d['player']}", f"{d['dominating']} {kind} dominates {d['dominated']}")
        )
    for eq in report.get("mixed_nash", []):
        label = "degenerate family" if eq["degenerate"] else "mixed equilibrium"
        rows.append(
            (
                label,
                f"row=({','.join(map(str, eq['row']))}) col=({','.join(map(str, eq['col']))})"
                f" pays ({','.join(map(str, eq['payoff']))})",
            )
        )
    cw = report["correlated_welfare"]
    rows.append(
        ("best welfare CE", f"value {cw['value']} at rho=({','.join(map(str, cw['rho']))})")
    )
    if "mixed_payoff" in report:
        mp = report["mixed_payoff"]
        rows.append(("mixed payoff", f"({','.join(map(str, mp['payoff']))})"))
    for entry in report.get("ewl", []):
        rows.append(
            (
                f"ewl gamma={entry['gamma']:.6g}",
                f"proper={entry['proper']} complete={entry['complete']}",
            )
        )
    _print_table(rows)
    return 0


# correlated ------------------------------------------------------------

def cmd_correlated(args) -> int:
    game = load_game(args.game)
    objective = _welfare_objective(game, args.objective)
    if args.rho:
        weights = _parse_csv_scalars(args.rho, len(game.profiles()), "--rho")
        rho = referee_dist(game, weights)
        feasible, violations = aumann_check(game, rho)
        value = sum(c * w for c, w in zip(objective, rho.weights))
        result = {
            "feasible": feasible,
            "value": scalar_to_json(value),
            "rho": [scalar_to_json(w) for w in rho.weights],
            "violations": [
                {
                    "player": v.player + 1,
                    "recommended": game.strategy_names[v.player][v.recommended],
                    "alternative": game.strategy_names[v.player][v.alternative],
                    "shortfall": scalar_to_json(v.shortfall),
                }
                for v in violations
            ],
        }
        if game.is_2x2():
            ce_ok, worst = is_correlated_eq(game, rho)
            result["response_rule_oracle"] = {"feasible": ce_ok, "worst_gain": scalar_to_json(worst)}
            result["expected_outcome"] = [
                scalar_to_json(v)
                for v in g_com(game, rho, ResponseRule.FOLLOW, ResponseRule.FOLLOW)
            ]
    else:
        value, rho = ce_optimize(game, objective)
        result = {
            "feasible": True,
            "value": scalar_to_json(value),
            "rho": [scalar_to_json(w) for w in rho.weights],
            "violations": [],
        }
    _emit_json(result)
    return 0


# ewl -------------------------------------------------------------------

def cmd_ewl(args) -> int:
    game = load_game(args.game)
    gamma = _parse_gamma(args.gamma)
    cfg = EwlConfig(game, gamma)
    seed = args.seed if args.seed is not None else _default_seed()

    if args.check == "proper":
        result = {"check": "proper", "gamma": gamma, "result": check_proper(cfg)}
        _emit_json(result) if args.json else print(f"proper: {result['result']}")
        return 0
    if args.check == "complete":
        ok, gap = check_complete(cfg, args.grid_steps)
        result = {"check": "complete", "gamma": gamma, "result": ok, "max_gap": gap}
        _emit_json(result) if args.json else print(f"complete: {ok} (max gap {gap:.3g})")
        return 0
    if args.scan:
        result = coverage_scan(cfg, args.scan, seed)
        result = {"gamma": gamma, "coverage_scan": result}
        _emit_json(result) if args.json else _print_table(
            [(k, str(v)) for k, v in result["coverage_scan"].items()]
        )
        return 0

    if args.mixture == "haar":
        mix_a = HaarMixture(seed, args.samples)
        mix_b = HaarMixture(seed, args.samples)
        payoff, se = g_mq(cfg, mix_a, mix_b)
        dist, cell_se = outcome_dist_mq(cfg, mix_a, mix_b)
        result = {
            "gamma": gamma,
            "mixture": "haar",
            "samples": args.samples,
            "seed": seed,
            "payoff": list(payoff),
            "payoff_se": list(se),
            "outcome_probs": list(dist.weights),
            "outcome_se": list(cell_se),
        }
        if args.json:
            _emit_json(result)
        else:
            _print_table(
                [
                    ("payoff", f"({payoff[0]:.6g}, {payoff[1]:.6g}) +- ({se[0]:.2g}, {se[1]:.2g})"),
                    (
                        "outcome probs",
                        " ".join(
                            f"{game.label(c)}={w:.4f}" for c, w in dist.items()
                        ),
                    ),
                ]
            )
        return 0

    ua = _parse_angles(args.uA) if args.uA else Unitary2(((1, 0), (0, 1)))
    ub = _parse_angles(args.uB) if args.uB else Unitary2(((1, 0), (0, 1)))
    state = protocol_state(cfg, ua, ub)
    payoff = g_q(cfg, ua, ub)
    probs = measure(state)
    result = {
        "gamma": gamma,
        "payoff": list(payoff),
        "outcome_probs": list(probs.weights),
        "cells": [game.label(c) for c in probs.support],
    }
    if args.json:
        _emit_json(result)
    else:
        _print_table(
            [
                ("payoff", f"({payoff[0]:.6g}, {payoff[1]:.6g})"),
                ("outcome probs", " ".join(f"{c}={w:.4f}" for c, w in zip(result["cells"], probs.weights))),
            ]
        )
    return 0


# verify ----------------------------------------------------------------

def cmd_verify(args) -> int:
    game = load_game(args.game)
    seed = args.seed if args.seed is not None else _default_seed()
    if args.profile.startswith("classical:"):
        p, q = _parse_csv_scalars(args.profile[len("classical:"):], 2, "classical profile")
        profile = MixedProfile.from_weights((p, 1 - p), (q, 1 - q))
        report = verify_classical_eq(game, profile)
    elif args.profile == "haar":
        gamma = _parse_gamma(args.gamma) if args.gamma else math.pi / 2
        cfg = EwlConfig(game, gamma)
        report = verify_quantum_eq(
            cfg,
            HaarMixture(seed, args.samples),
            HaarMixture(seed, args.samples),
            deviation_grid=args.grid,
        )
    else:
        raise BadRationalError(
            f"--profile must be classical:<p,q> or haar, got {args.profile!r}"
        )
    _emit_json(report.to_json_dict())
    return 0 if report.certified else 2


# paper-check -----------------------------------------------------------

def cmd_paper_check(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    results = checks.run_paper_check(samples=args.samples, seed=seed)
    all_passed = all(r.passed for r in results)
    if args.json:
        _emit_json(
            {
                "samples": args.samples,
                "seed": seed,
                "all_passed": all_passed,
                "checks": [r.to_json_dict() for r in results],
            }
        )
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"[{status}] {r.number:>2} {r.name:<24} {r.detail}")
        print(f"{'all checks passed' if all_passed else 'SOME CHECKS FAILED'}")
    return 0 if all_passed else 2


# parser ----------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="qgames", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="classical analysis of a game")
    p.add_argument("--game", required=True, help="builtin name (pd|poker|chicken) or JSON file")
    p.add_argument("--mixed", help="evaluate the mixed profile p,q (first-strategy weights)")
    p.add_argument("--gamma", action="append", help="also run quantization checks at gamma")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("correlated", help="check or optimize referee distributions")
    p.add_argument("--game", required=True)
    p.add_argument("--rho", help="cell weights, row-major, e.g. 1/3,1/3,1/3,0")
    p.add_argument("--objective", default="welfare")
    p.set_defaults(func=cmd_correlated)

    p = sub.add_parser("ewl", help="entangled-referee quantization")
    p.add_argument("--game", required=True)
    p.add_argument("--gamma", required=True, help="entanglement in [0, pi/2], or 'max'")
    p.add_argument("--uA", help="player 1 unitary as theta,alpha,beta")
    p.add_argument("--uB", help="player 2 unitary as theta,alpha,beta")
    p.add_argument("--mixture", choices=["haar"], help="use Haar-mixed strategies")
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int)
    p.add_argument("--check", choices=["proper", "complete"])
    p.add_argument("--grid-steps", type=int, default=20)
    p.add_argument("--scan", type=int, help="coverage scan with this many Haar pairs")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ewl)

    p = sub.add_parser("verify", help="certify an equilibrium claim")
    p.add_argument("--game", required=True)
    p.add_argument("--gamma", help="entanglement for quantum profiles (default max)")
    p.add_argument("--profile", required=True, help="classical:<p,q> or haar")
    p.add_argument("--grid", type=int, default=8)
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("paper-check", help="re-run the full verification suite")
    p.add_argument("--samples", type=int, default=200000)
    p.add_argument("--seed", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_paper_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        code = getattr(exc, "code", None)
        prefix = f"error[{code}]" if isinstance(code, str) else "error"
        print(f"{prefix}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
