"""Command line: ``og check|eq|verify|dot <file>``.

Exit status: 0 success, 1 usage, 2 parse/type/profile error, 3 budget
exceeded, 4 I/O error.  ``verify`` exits 0 whether or not the profile is an
equilibrium; the verdict is in the report.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .core import DEFAULT_BUDGET, DEFAULT_TOL
from .dsl import check_source, elaborate, export_dot
from .equilibrium import default_workers, diagnose, equilibria, require_closed
from .errors import BudgetExceeded, OpenGameError
from .profiles import player_keys, render_profile

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_BUDGET, EXIT_IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _jsonable(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else float(v)
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    return v


def _text_value(v) -> str:
    v = _jsonable(v)
    if v is None:
        return "()"
    if isinstance(v, list):
        return "(" + ", ".join(_text_value(x) for x in v) + ")"
    return str(v)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="og", description="Check, solve and draw open games written in .og files.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def common(sp):
        sp.add_argument("file", help="game file (.og)")
        sp.add_argument("--out", help="write the result to this file instead of stdout")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL, help="tie tolerance for argmax (default 1e-9)")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="limit on equilibrium evaluations")
        sp.add_argument("--workers", type=int, default=None, help="worker processes (default: $OG_WORKERS or CPU count)")

    common(sub.add_parser("check", help="parse and typecheck a game file"))
    common(sub.add_parser("eq", help="list all equilibria of a closed game"))
    v = sub.add_parser("verify", help="check one strategy profile and report each player's payoffs")
    common(v)
    v.add_argument("--profile", help="profile as a JSON file, inline JSON, or '-' for stdin (default: empty)")
    d = sub.add_parser("dot", help="export the diagram as Graphviz DOT")
    common(d)
    d.add_argument("--collapse", action="store_true", help="draw let-bound boxes as single nodes")
    return p


def _read(path) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(args):
    tp = check_source(_read(args.file), args.file)
    return tp, elaborate(tp)


def _name(args) -> str:
    return Path(args.file).stem


def cmd_check(args) -> dict:
    tp, game = _load(args)
    keys = player_keys(game.sigma)
    return {
        "game": _name(args),
        "ok": True,
        "interface": str(tp.root.iface),
        "closed": game.iface.is_closed(),
        "players": [k for k, _ in keys.values()],
        "strategy_space": game.sigma.size,
    }


def cmd_eq(args) -> dict:
    _, game = _load(args)
    require_closed(game)
    start = time.perf_counter()
    found = equilibria(game, args.budget, workers=args.workers, tol=args.tol)
    return {
        "game": _name(args),
        "strategy_space": game.sigma.size,
        "count": len(found),
        "equilibria": [render_profile(game.sigma, s) for s in found],
        "elapsed_seconds": round(time.perf_counter() - start, 6),
    }


def _profile_data(spec):
    if spec is None:
        return {}
    if spec == "-":
        text = sys.stdin.read()
    elif spec.lstrip().startswith(("{", "[")):
        text = spec
    else:
        text = _read(spec)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        from .errors import ProfileError

        raise ProfileError(f"profile is not valid JSON: {exc}") from None


def cmd_verify(args) -> dict:
    from .profiles import parse_profile

    _, game = _load(args)
    require_closed(game)
    profile = parse_profile(game.sigma, _profile_data(args.profile))
    start = time.perf_counter()
    verdict = diagnose(game, profile, tol=args.tol, budget=args.budget)
    rows = []
    for c in verdict.checks:
        # observations and choices are written as in profile files
        obs, ch = c.leaf.obs, c.leaf.choice
        rows.append(
            {
                "player": c.player,
                "observation": obs.render(c.observation),
                "choice": ch.render(c.choice),
                "payoff": _jsonable(c.payoff),
                "best_choice": None if c.best_choice is None else ch.render(c.best_choice),
                "best_payoff": _jsonable(c.best_payoff),
                "ok": c.ok,
            }
        )
    return {
        "game": _name(args),
        "equilibrium": verdict.equilibrium,
        "checks": rows,
        "deviations": [r for r in rows if not r["ok"]],
        "elapsed_seconds": round(time.perf_counter() - start, 6),
    }


def cmd_dot(args) -> str:
    tp = check_source(_read(args.file), args.file)
    return export_dot(tp, _name(args), collapse=args.collapse)


def _as_text(command, report) -> str:
    if command == "check":
        kind = "closed" if report["closed"] else "open"
        players = ", ".join(report["players"]) or "none"
        return (
            f"{report['game']}: ok\n  interface: {report['interface']} ({kind})\n"
            f"  players: {players}\n  strategy profiles: {report['strategy_space']}\n"
        )
    if command == "eq":
        lines = [f"{report['game']}: {report['count']} equilibria among {report['strategy_space']} profiles"]
        for e in report["equilibria"]:
            lines.append("  " + _text_profile(e))
        lines.append(f"  ({report['elapsed_seconds']:.3f} s)")
        return "\n".join(lines) + "\n"
    verdict = "an equilibrium" if report["equilibrium"] else "not an equilibrium"
    lines = [f"{report['game']}: {verdict}"]
    for r in report["checks"]:
        mark = "ok " if r["ok"] else "DEV"
        obs = "" if r["observation"] is None else f" at {_text_value(r['observation'])}"
        lines.append(
            f"  {mark} {r['player']}{obs}: plays {_text_value(r['choice'])} for {_text_value(r['payoff'])}, "
            f"best {_text_value(r['best_choice'])} for {_text_value(r['best_payoff'])}"
        )
    return "\n".join(lines) + "\n"


def _text_profile(p, prefix="") -> str:
    parts = []
    for k, v in p.items():
        if isinstance(v, dict):
            parts.append(_text_profile(v, prefix + k + "/"))
        elif len(v) == 1 and v[0][0] is None:
            parts.append(f"{prefix}{k}={_text_value(v[0][1])}")
        else:
            table = ", ".join(f"{_text_value(o)}->{_text_value(c)}" for o, c in v)
            parts.append(f"{prefix}{k}={{{table}}}")
    return " ".join(parts)


COMMANDS = {"check": cmd_check, "eq": cmd_eq, "verify": cmd_verify, "dot": cmd_dot}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.tol < 0:
            raise UsageError("--tol must be non-negative")
        if args.budget < 1:
            raise UsageError("--budget must be at least 1")
        if args.workers is None:
            args.workers = default_workers()
        elif args.workers < 1:
            raise UsageError("--workers must be at least 1")
    except UsageError as exc:
        print(f"og: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    except ValueError as exc:  # bad OG_WORKERS
        print(f"og: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        result = COMMANDS[args.command](args)
    except OSError as exc:
        print(f"og: cannot read {exc.filename or args.file}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    except BudgetExceeded as exc:
        print(f"og: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OpenGameError as exc:
        print(f"og: {exc}", file=sys.stderr)
        return exc.exit_code

    if isinstance(result, str):
        text = result
    elif args.format == "json":
        text = json.dumps(result, indent=2) + "\n"
    else:
        text = _as_text(args.command, result)
    try:
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"og: cannot write {args.out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
