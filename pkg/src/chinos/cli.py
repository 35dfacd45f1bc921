"""Command-line interface: tables, analyses, game solving, interactive play,
and the HTTP service.

Exit codes: 0 success, 1 runtime failure, 2 usage error.  Analysis and
table output is JSON on stdout (exact rationals as strings, floats
alongside); human-readable summaries go to stderr so pipelines stay clean.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import classical, formats, policies, quantum, semiclassical, solver
from .fock import pair_state
from .scalars import format_rational, parse_rational
from .session import SessionError, create_session

OPERATOR_LABELS = {1: "O1", 2: "O2", 3: "O3", 4: "O4"}


def _parse_mix(text: str) -> tuple[Fraction, ...]:
    parts = [p.strip() for p in text.split(",")]
    return tuple(parse_rational(p) for p in parts)


# -- tables -----------------------------------------------------------------


def _scg_tables_payload() -> dict:
    table1 = [
        {
            "draw1": OPERATOR_LABELS[i],
            "draw2": OPERATOR_LABELS[j],
            "distribution": formats.distribution_json(semiclassical.joint_distribution(i, j)),
        }
        for i in semiclassical.DRAW_INDICES
        for j in semiclassical.DRAW_INDICES
    ]
    table2 = [
        {
            "draw": OPERATOR_LABELS[i],
            "distribution": formats.distribution_json(dist),
        }
        for i, dist in semiclassical.averaged_table().items()
    ]
    return {"table1": {"cells": table1}, "table2": {"rows": table2}}


def _qcg_tables_payload() -> dict:
    fid_tables = []
    for d1, guess in sorted(quantum.WINNING_GUESS.items()):
        fid_tables.append(
            {
                "draw1": OPERATOR_LABELS[d1],
                "guess1": list(guess),
                "rows": [
                    {"draw2": OPERATOR_LABELS[d2], "f1": formats.exact_float(f1)}
                    for d2, f1 in quantum.payoff_table_for_guess(guess, d1).items()
                ],
            }
        )
    return {"gram": quantum.gram_metric().to_json(), "fidelity_tables": fid_tables}


def _tables_csv(game: str) -> str:
    if game == "scg":
        rows = [
            [OPERATOR_LABELS[i], OPERATOR_LABELS[j]]
            + [format_rational(p) for p in semiclassical.joint_distribution(i, j)]
            for i in semiclassical.DRAW_INDICES
            for j in semiclassical.DRAW_INDICES
        ]
        part1 = formats.render_csv(["draw1", "draw2", "p0", "p1", "p2"], rows)
        rows2 = [
            [OPERATOR_LABELS[i]] + [format_rational(p) for p in dist]
            for i, dist in semiclassical.averaged_table().items()
        ]
        part2 = formats.render_csv(["draw", "avg_p0", "avg_p1", "avg_p2"], rows2)
        return part1 + "\n" + part2
    metric = quantum.gram_metric()
    rows = [
        [f"({p1[0]},{p1[1]})", f"({p2[0]},{p2[1]})",
         format_rational(metric.overlap_sq(p1, p2)), str(metric.is_orthogonal(p1, p2))]
        for p1 in metric.pairs
        for p2 in metric.pairs
    ]
    part1 = formats.render_csv(["row", "col", "overlap_sq", "orthogonal"], rows)
    rows2 = [
        [OPERATOR_LABELS[d1], f"({g[0]},{g[1]})", OPERATOR_LABELS[d2], format_rational(f1)]
        for d1, g in sorted(quantum.WINNING_GUESS.items())
        for d2, f1 in quantum.payoff_table_for_guess(g, d1).items()
    ]
    part2 = formats.render_csv(["draw1", "guess1", "draw2", "f1"], rows2)
    return part1 + "\n" + part2


def _tables_markdown(game: str) -> str:
    if game == "scg":
        headers = [""] + [OPERATOR_LABELS[i] for i in semiclassical.DRAW_INDICES]
        rows = []
        for j in semiclassical.DRAW_INDICES:  # rows: second player's draw
            row = [OPERATOR_LABELS[j]]
            for i in semiclassical.DRAW_INDICES:
                dist = semiclassical.joint_distribution(i, j)
                row.append(" ".join(format_rational(p) for p in dist))
            rows.append(row)
        part1 = "### Joint outcome distributions (p0 p1 p2)\n\n" + formats.render_markdown(
            headers, rows
        )
        rows2 = [
            [OPERATOR_LABELS[i]] + [format_rational(p) for p in dist]
            for i, dist in semiclassical.averaged_table().items()
        ]
        part2 = "\n### Averages against a uniform opponent\n\n" + formats.render_markdown(
            ["draw", "p0", "p1", "p2"], rows2
        )
        return part1 + part2
    metric = quantum.gram_metric()
    headers = [""] + [f"({p[0]},{p[1]})" for p in metric.pairs]
    rows = []
    for p1 in metric.pairs:
        row = [f"({p1[0]},{p1[1]})"]
        for p2 in metric.pairs:
            row.append("0" if metric.is_orthogonal(p1, p2) else format_rational(metric.overlap_sq(p1, p2)))
        rows.append(row)
    part1 = "### Guess-space metric (|G|² entries; 0 marks admissible successors)\n\n" + (
        formats.render_markdown(headers, rows)
    )
    rows2 = [
        [OPERATOR_LABELS[d1], f"({g[0]},{g[1]})", OPERATOR_LABELS[d2], format_rational(f1)]
        for d1, g in sorted(quantum.WINNING_GUESS.items())
        for d2, f1 in quantum.payoff_table_for_guess(g, d1).items()
    ]
    part2 = "\n### First-caller gains by opponent draw\n\n" + formats.render_markdown(
        ["draw1", "guess1", "draw2", "f1"], rows2
    )
    return part1 + part2


def cmd_tables(args) -> int:
    if args.format == "json":
        payload = _scg_tables_payload() if args.game == "scg" else _qcg_tables_payload()
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        print(_tables_csv(args.game), end="")
    else:
        print(_tables_markdown(args.game), end="")
    return 0


# -- analyses ---------------------------------------------------------------


def cmd_analyze(args) -> int:
    if args.game == "ccg":
        payload = _analyze_ccg(args)
    elif args.game == "scg":
        payload = _analyze_scg(args)
    else:
        payload = _analyze_qcg(args)
    print(json.dumps(payload, indent=2))
    if args.game == "qcg":
        print(_qcg_summary(), file=sys.stderr)
    return 0


def _analyze_ccg(args) -> dict:
    nc = args.n_coins
    if args.strategy1 or args.strategy2:
        if not (args.strategy1 and args.strategy2):
            raise ValueError("provide both --strategy1 and --strategy2")
        with open(args.strategy1, encoding="utf-8") as fh:
            s1 = classical.strategy_from_json(json.load(fh))
        with open(args.strategy2, encoding="utf-8") as fh:
            s2 = classical.strategy_from_json(json.load(fh))
        profile = "custom"
    else:
        s1, s2 = classical.stable_profile(nc)
        profile = "stable"
    odds = classical.exact_win_prob(s1, s2, n_coins=s1.n_coins, exclusion=args.exclusion)
    payload = {
        "game": f"ccg(2,{s1.n_coins})",
        "profile": profile,
        "exclusion": args.exclusion,
        "win_odds": odds.to_json(),
    }
    if args.simulate:
        if args.seed is None:
            raise ValueError("--simulate needs --seed for a reproducible run")
        result = classical.simulate_rounds(s1, s2, args.simulate, args.seed)
        payload["simulation"] = {
            "rounds": args.simulate,
            "seed": args.seed,
            **result.to_json(),
        }
    if args.p1 is not None:
        p1 = parse_rational(args.p1)
        payload["relations"] = {
            "p1": formats.exact_float(p1),
            "p2_when_first_leaks_nothing": formats.exact_float(classical.p2_from_p1(p1, nc)),
            "normalized_payoff_p2": formats.exact_float(classical.normalized_payoff_p2(p1, nc)),
        }
    payload["notes"] = {
        "win_odds": "per-round success chances and normalized shares for the "
        "requested profile; the stable profile certifies the even 1/2 split",
        "relations": "closed-form responder chance (1-p1)/N_c and its "
        "normalized share (1-p1)/(1+p1(N_c-1))",
    }
    return payload


def _analyze_scg(args) -> dict:
    draw_mix = _parse_mix(args.draw_mix) if args.draw_mix else semiclassical.uniform_mix()
    opp_mix = _parse_mix(args.opponent_mix) if args.opponent_mix else semiclassical.uniform_mix()
    best = {
        OPERATOR_LABELS[d]: {
            "guess": bg.guess,
            "win_prob": formats.exact_float(bg.win_prob),
            "tied_alternatives": sorted(bg.tied_alternatives),
        }
        for d in semiclassical.DRAW_INDICES
        for bg in [semiclassical.best_guess(d, opp_mix)]
    }
    return {
        "game": "scg(2,1)",
        "draw_mix": [format_rational(w) for w in draw_mix],
        "opponent_mix": [format_rational(w) for w in opp_mix],
        "first_guess_success": formats.exact_float(
            semiclassical.strategy_payoff_p1(draw_mix, opp_mix)
        ),
        "best_guess_by_draw": best,
        "reference_points": {
            "uniform_vs_uniform": formats.exact_float(
                semiclassical.strategy_payoff_p1(semiclassical.uniform_mix(), semiclassical.uniform_mix())
            ),
            "classical_draws_vs_uniform": formats.exact_float(
                semiclassical.strategy_payoff_p1(semiclassical.classical_mix(), semiclassical.uniform_mix())
            ),
            "classical_vs_classical": formats.exact_float(
                semiclassical.strategy_payoff_p1(semiclassical.classical_mix(), semiclassical.classical_mix())
            ),
        },
        "notes": {
            "first_guess_success": "chance the first caller's optimal per-draw "
            "call matches the measured total, for the echoed mixes",
            "reference_points": "53/112 (all-four random draws lose ground), "
            "13/24 (classical draws regain the edge), 1/2 (classical standoff)",
        },
    }


def _analyze_qcg(args) -> dict:
    report = quantum.exhaustive_analysis()
    payload = report.to_json(include_profiles=args.profiles)
    payload["winning_strategy_payoff"] = formats.exact_float(quantum.winning_strategy_payoff())
    payload["verdict"] = quantum.symmetry_verdict(report)
    return payload


def _qcg_summary() -> str:
    report = quantum.exhaustive_analysis()
    by_draw = ", ".join(
        f"O{d}: {format_rational(v)}" for d, v in sorted(report.edge_gain_by_opponent_draw.items())
    )
    lines = [
        "Fully quantum game, exhaustive scan of pure strategy profiles:",
        f"  edge strategy expected gain by opponent draw: {by_draw}",
        f"  opponent's gain-minimizing draws: "
        + ", ".join(sorted(f"O{d}" for d in report.edge_minimizing_draws)),
        f"  guaranteed value: {format_rational(report.guaranteed_value)}"
        f" ≈ {float(report.guaranteed_value):.6f}",
        quantum.symmetry_verdict(report),
    ]
    return "\n".join(lines)


# -- solver -----------------------------------------------------------------


def cmd_solve(args) -> int:
    game = solver.load_game(args.input)
    uniform1 = [Fraction(1, len(game.actions1))] * len(game.actions1)
    uniform2 = [Fraction(1, len(game.actions2))] * len(game.actions2)
    fp = solver.fictitious_play(game, args.fp_iters, args.fp_tolerance)
    v1, v2 = solver.expected_payoff(game, uniform1, uniform2)
    payload = {
        "actions1": list(game.actions1),
        "actions2": list(game.actions2),
        "uniform_expected_payoff": [formats.exact_float(v1), formats.exact_float(v2)],
        "best_responses_vs_uniform": {
            "player1": [game.actions1[i] for i in solver.best_responses(game, uniform2, 1)],
            "player2": [game.actions2[j] for j in solver.best_responses(game, uniform1, 2)],
        },
        "pure_equilibria": [
            [game.actions1[i], game.actions2[j]] for i, j in solver.pure_equilibria(game)
        ],
        "fictitious_play": {
            "mix1": [format_rational(w) for w in fp.mix1],
            "mix2": [format_rational(w) for w in fp.mix2],
            "converged": fp.converged,
            "iterations": fp.iterations,
        },
    }
    print(json.dumps(payload, indent=2))
    return 0


# -- interactive play ----------------------------------------------------------


def _prompt_choice(label: str, options: list, render) -> object:
    """Menu prompt; illegal input re-prompts, EOF aborts."""
    while True:
        print(label)
        for idx, opt in enumerate(options, start=1):
            print(f"  [{idx}] {render(opt)}")
        try:
            raw = input("> ").strip()
        except EOFError:
            raise KeyboardInterrupt from None
        if raw.isdigit() and 1 <= int(raw) <= len(options):
            return options[int(raw) - 1]
        print(f"please answer 1..{len(options)}")


def _render_draw(variant: str, value) -> str:
    if variant == "classical":
        return f"hide {value} coin(s)"
    names = {
        1: "O1 = identity (certainly 0 coins)",
        2: "O2 = (I + b†)/√2",
        3: "O3 = (I - b†)/√2",
        4: "O4 = b† (certainly 1 coin)",
    }
    return names[value]


def _print_round_result(result: dict) -> None:
    print(f"--- round {result['round']} ---")
    print(f"  draws: {result['draws']}")
    print(f"  guesses: {result['guesses']}")
    dist = " ".join(f"{p['float']:.4f}" for p in result["distribution"])
    print(f"  outcome distribution: {dist}")
    if result["outcome"] is not None:
        print(f"  measured total: {result['outcome']}")
    if result["payoffs"]:
        print(
            "  gains: player1 "
            f"{result['payoffs']['player1']['exact']}, player2 {result['payoffs']['player2']['exact']}"
        )
    if result["winner"]:
        print(f"  winner: player {result['winner']}")
    elif result["void"]:
        print("  void round (nobody wins)")


def cmd_play(args) -> int:
    seat = args.seat
    opponent_seat = 3 - seat
    configs: list[dict] = [{}, {}]
    configs[seat - 1] = {"kind": "human"}
    configs[opponent_seat - 1] = {"kind": "engine", "policy": args.opponent}
    session = create_session(
        args.variant, configs, args.rounds, args.seed, args.scoring, args.n_coins
    )
    print(
        f"playing {args.variant} as player {seat} vs '{args.opponent}' "
        f"({args.rounds} rounds, seed {args.seed})"
    )
    try:
        while not session.finished:
            policies.auto_play(session)
            if session.finished:
                break
            if session.phase.value == "resolve":
                result = session.resolve_round()
                _print_round_result(result.to_json())
                continue
            view = session.state_view(seat)
            if session.phase.value.startswith("draw"):
                move = _prompt_choice(
                    f"round {session.round} · your draw:",
                    view["legal_draws"],
                    lambda v: _render_draw(args.variant, v),
                )
                session.submit_draw(seat, move)
            else:
                options = view["legal_guesses"]
                if args.variant == "quantum":
                    move = tuple(
                        _prompt_choice(
                            f"round {session.round} · your guess (state O_j O_k|0⟩):",
                            options,
                            lambda p: f"({p[0]},{p[1]})",
                        )
                    )
                else:
                    move = _prompt_choice(
                        f"round {session.round} · call the total:",
                        options,
                        str,
                    )
                session.submit_guess(seat, move)
    except KeyboardInterrupt:
        print("\naborted")
        return 1
    final = session.state_view("spectator")
    print("=== final ===")
    print(f"scores: {json.dumps(final['scores'])}")
    print(f"wins:   {json.dumps(final['wins'])} (void rounds: {final['void_rounds']})")
    s1, s2 = session.scores[1], session.scores[2]
    if s1 == s2:
        print("result: even")
    else:
        print(f"result: player {1 if s1 > s2 else 2} leads")
    return 0


# -- service ----------------------------------------------------------------


def resolve_port(flag_value: int | None) -> int:
    """Explicit --port wins, then $CHINOS_PORT, then 8000."""
    if flag_value is not None:
        return flag_value
    return int(os.environ.get("CHINOS_PORT", "8000"))


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=resolve_port(args.port), log_level="warning")
    return 0


# -- entry point -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chinos",
        description="Classical, semiclassical, and quantum Chinos game engine",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_tables = sub.add_parser("tables", help="emit the outcome/metric tables")
    p_tables.add_argument("--game", choices=["scg", "qcg"], required=True)
    p_tables.add_argument("--format", choices=["json", "csv", "md"], default="json")
    p_tables.set_defaults(func=cmd_tables)

    p_analyze = sub.add_parser("analyze", help="run a game analysis")
    p_analyze.add_argument("game", choices=["ccg", "scg", "qcg"])
    p_analyze.add_argument("--n-coins", type=int, default=1)
    p_analyze.add_argument("--exclusion", choices=["guesses", "draws"], default="guesses")
    p_analyze.add_argument("--p1", help="probability for the closed-form relations (ccg)")
    p_analyze.add_argument("--strategy1", help="strategy JSON file for seat 1 (ccg)")
    p_analyze.add_argument("--strategy2", help="strategy JSON file for seat 2 (ccg)")
    p_analyze.add_argument("--draw-mix", help="comma-separated rationals over O1..O4 (scg)")
    p_analyze.add_argument("--opponent-mix", help="comma-separated rationals over O1..O4 (scg)")
    p_analyze.add_argument("--profiles", action="store_true", help="include every pure profile (qcg)")
    p_analyze.add_argument("--simulate", type=int, help="Monte-Carlo rounds to cross-check (ccg)")
    p_analyze.add_argument("--seed", type=int, help="seed for --simulate")
    p_analyze.set_defaults(func=cmd_analyze)

    p_solve = sub.add_parser("solve", help="analyze a matrix game from JSON")
    p_solve.add_argument("--input", required=True)
    p_solve.add_argument("--fp-iters", type=int, default=10_000)
    p_solve.add_argument("--fp-tolerance", type=float, default=1e-3)
    p_solve.set_defaults(func=cmd_solve)

    p_play = sub.add_parser("play", help="play interactively against an engine")
    p_play.add_argument("--variant", choices=["classical", "semiclassical", "quantum"], required=True)
    p_play.add_argument("--opponent", required=True, help="engine policy for the other seat")
    p_play.add_argument("--seed", type=int, required=True)
    p_play.add_argument("--rounds", type=int, default=5)
    p_play.add_argument("--seat", type=int, choices=[1, 2], default=1)
    p_play.add_argument("--scoring", choices=["fidelity", "measured"], default="fidelity")
    p_play.add_argument("--n-coins", type=int, default=1)
    p_play.set_defaults(func=cmd_play)

    p_serve = sub.add_parser("serve", help="run the JSON-over-HTTP service")
    p_serve.add_argument("--port", type=int, default=None, help="default: $CHINOS_PORT or 8000")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SessionError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
