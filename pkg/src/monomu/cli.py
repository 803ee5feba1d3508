"""Command-line front end.

Exit codes: 0 holds, 1 semantic negative, 2 parse error, 3 invalid input,
4 size guard exceeded.
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
from pathlib import Path

from monomu import properties
from monomu.bisim import bisimilar, globally_bisimilar
from monomu.denotation import eval_mu
from monomu.errors import GuardError, ModelError, ParseError
from monomu.game import A, E, Basic, build_arena, solve, verify_strategy, write_arena
from monomu.model import PointedModel, load_document, state_key
from monomu.syntax import free_vars, parse_mu, print_mu, print_nmso
from monomu.translate import build_universe, eliminate_global, to_nmso

OK, NEGATIVE, PARSE, INVALID, GUARD = 0, 1, 2, 3, 4
MAX_MODEL_STATES = 12


class _Usage(Exception):
    pass


def _read_formula(text: str):
    path = Path(text)
    if path.suffix and path.is_file():
        text = path.read_text()
    return parse_mu(text.strip())


def _read_document(path: str, force: bool):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ModelError(f"cannot read {path}: {exc.strerror}") from exc
    doc = load_document(data)
    if not force and len(doc.model.states) > MAX_MODEL_STATES:
        raise GuardError(f"{path} has {len(doc.model.states)} states; the guard is {MAX_MODEL_STATES} (use --force)")
    return doc


def _listing(states) -> str:
    return " ".join(sorted(states, key=state_key))


def cmd_eval(args, out):
    m = _read_document(args.model, args.force).model
    f = _read_formula(args.formula)
    print(_listing(eval_mu(m, f)), file=out)
    return OK


def cmd_game(args, out):
    m = _read_document(args.model, args.force).model
    f = _read_formula(args.formula)
    arena = build_arena(m, f)
    sol = solve(arena)
    region = frozenset(s for s in m.states if arena.id(Basic(s, f)) in sol.win_E)
    print(_listing(region), file=out)
    status = OK
    if args.adequacy:
        den = eval_mu(m, f)
        if den == region:
            print("adequacy: game and denotation agree", file=out)
        else:
            print(f"adequacy: mismatch, denotation gives {_listing(den) or '(empty)'}", file=out)
            status = NEGATIVE
    if args.verify_strategies:
        for player in (E, A):
            good = verify_strategy(arena, sol, player)
            print(f"strategy {player}: {'verified' if good else 'FAILED'}", file=out)
            if not good:
                status = NEGATIVE
    if args.dump_arena:
        Path(args.dump_arena).write_bytes(write_arena(arena))
        print(f"arena written to {args.dump_arena}", file=out)
    return status


def _pointed(path, point, force):
    return PointedModel(_read_document(path, force).model, point)


def cmd_bisim(args, out):
    left = _pointed(args.left, args.left_point, args.force)
    right = _pointed(args.right, args.right_point, args.force)
    if args.global_:
        yes = globally_bisimilar(left, right)
        print("globally bisimilar" if yes else "not globally bisimilar", file=out)
    else:
        yes = bisimilar(left, right)
        print("bisimilar" if yes else "not bisimilar", file=out)
    return OK if yes else NEGATIVE


def cmd_translate(args, out):
    f = _read_formula(args.formula)
    if args.to_nmso:
        print(print_nmso(to_nmso(f)), file=out)
        return OK
    if args.universe is None:
        raise _Usage("--eliminate-global needs --universe K")
    vocab = args.vocab.split(",") if args.vocab else sorted(free_vars(f)) or ["p"]
    universe = build_universe(args.universe, vocab, force=args.force)
    tf, _ = eliminate_global(f, universe)
    print(print_mu(tf), file=out)
    return OK


def cmd_properties(args, out):
    suite = properties.SUITES[args.suite]
    accepted = inspect.signature(suite).parameters
    kwargs = {"seed": args.seed}
    if args.samples is not None:
        kwargs["samples"] = args.samples
    if args.universe is not None:
        if "universe" not in accepted:
            raise _Usage(f"suite {args.suite} takes no --universe")
        kwargs["universe"] = args.universe
    if "force" in accepted:
        kwargs["force"] = args.force
    report = suite(**kwargs)
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=1), file=out)
    else:
        verdict = "pass" if report.passed else f"FAIL ({len(report.failures)} counterexamples)"
        print(f"{report.suite}: {verdict} [{report.samples} samples, {report.checks} checks, seed {args.seed}]", file=out)
    if report.failures:
        outdir = Path(args.out_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        for k, failure in enumerate(report.failures):
            target = outdir / f"{report.suite}-{failure.get('index', k)}-{k}.json"
            target.write_text(json.dumps(failure, indent=1))
            if args.format != "json":
                print(f"  counterexample written to {target}", file=out)
        return NEGATIVE
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monomu", description="Monotone modal mu-calculus toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--force", action="store_true", help="lift size guards")

    p = sub.add_parser("eval", help="print the extension of a formula")
    p.add_argument("-m", "--model", required=True)
    p.add_argument("-f", "--formula", required=True, help="formula text or a file holding it")
    common(p)
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("game", help="solve the evaluation game")
    p.add_argument("-m", "--model", required=True)
    p.add_argument("-f", "--formula", required=True)
    p.add_argument("--adequacy", action="store_true", help="compare with the denotation")
    p.add_argument("--verify-strategies", action="store_true")
    p.add_argument("--dump-arena", metavar="PATH")
    common(p)
    p.set_defaults(handler=cmd_game)

    p = sub.add_parser("bisim", help="decide bisimilarity of two pointed models")
    p.add_argument("left")
    p.add_argument("left_point")
    p.add_argument("right")
    p.add_argument("right_point")
    p.add_argument("--global", dest="global_", action="store_true")
    common(p)
    p.set_defaults(handler=cmd_bisim)

    p = sub.add_parser("translate", help="translate a formula")
    p.add_argument("-f", "--formula", required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--to-nmso", action="store_true")
    mode.add_argument("--eliminate-global", action="store_true")
    p.add_argument("--universe", type=int, metavar="K")
    p.add_argument("--vocab", help="comma-separated universe vocabulary (default: the formula's)")
    common(p)
    p.set_defaults(handler=cmd_translate)

    p = sub.add_parser("properties", help="run a seeded property suite")
    p.add_argument("--suite", required=True, choices=sorted(properties.SUITES))
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--samples", type=int)
    p.add_argument("--universe", type=int)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out-dir", default="counterexamples")
    common(p)
    p.set_defaults(handler=cmd_properties)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return PARSE
    except GuardError as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return GUARD
    except (_Usage, ModelError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
