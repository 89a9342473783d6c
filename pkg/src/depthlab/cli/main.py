"""Command-line entry point."""
from __future__ import annotations

import argparse
import signal
import sys

from ..grobner.expr import ParseError
from ..invariants import CrosscheckFailure
from .commands import CHECKS, UserError, emit_report, run_command
from .dsl import FieldSpec
from .registry import lookup, names
from .session import Session, SessionError

EXIT_OK, EXIT_FAIL, EXIT_USER, EXIT_INTERNAL = 0, 1, 2, 3

USAGE_ARGS = {
    "resolve": ["module"], "measure": ["module"], "depth": ["object"],
    "tor": ["module", "module"], "ext": ["module", "module"],
    "qr": ["module", "module"], "br": ["module", "module"],
}


class _Timeout(Exception):
    pass


def _global_flags(p, default) -> None:
    # the same flags are accepted before and after the subcommand
    def d(value):
        return value if default is None else default
    p.add_argument("--window", type=int, default=d(6), help="homological window (default 6)")
    p.add_argument("--seed", type=int, default=d(0), help="random seed (default 0)")
    p.add_argument("--field", default=d(None), help="coefficient field: Q, Qt, Fp:P or Fpt:P")
    p.add_argument("--format", choices=("json", "text"), default=d("json"))
    p.add_argument("--timeout", type=float, default=d(None), help="abort after this many seconds")
    p.add_argument("--ring", default=d(None), help="example ring to load as R (k is its residue field)")
    p.add_argument("--script", default=d(None), help="script whose declarations are loaded first")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="depthlab",
        description="Depth, Tor/Ext vanishing and depth-formula checks over graded rings.")
    _global_flags(p, None)
    late = argparse.ArgumentParser(add_help=False)
    _global_flags(late, argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)
    for cmd, kinds in USAGE_ARGS.items():
        s = sub.add_parser(cmd, parents=[late])
        for i, k in enumerate(kinds):
            s.add_argument(f"arg{i}", metavar=k.upper())
        if cmd in ("tor", "ext"):
            s.add_argument("--index", type=int, default=None, help="a single homological index")
    s = sub.add_parser("check", parents=[late])
    s.add_argument("mode", choices=CHECKS)
    s.add_argument("args", nargs="+", metavar="MODULE")
    s = sub.add_parser("crosscheck", parents=[late])
    s.add_argument("lemma")
    s.add_argument("args", nargs="+", metavar="OBJECT")
    s = sub.add_parser("survey", parents=[late])
    s.add_argument("check")
    s.add_argument("--samples", type=int, default=100)
    s = sub.add_parser("run", parents=[late], help="execute a script file")
    s.add_argument("file")
    sub.add_parser("examples", parents=[late], help="list the example rings")
    return p


def _execute(ns) -> list:
    field = FieldSpec.parse(ns.field) if ns.field else None
    sess = Session(window=ns.window, seed=ns.seed, field_override=field)
    if ns.ring:
        try:
            lookup(ns.ring)
        except KeyError:
            raise UserError(f"unknown example ring {ns.ring!r}; known: {', '.join(names())}")
        sess.load_example(ns.ring)
    if ns.script and ns.command != "run":
        with open(ns.script, encoding="utf-8") as fh:
            sess.run_text(fh.read())
    if ns.command == "examples":
        from .commands import Report
        vals = {n: lookup(n).provenance for n in names()}
        return [Report("examples", {}, None, None, vals)]
    if ns.command == "run":
        with open(ns.file, encoding="utf-8") as fh:
            return sess.run_text(fh.read())
    if ns.command == "survey":
        if "R" not in sess.env:
            raise UserError("survey needs --ring or a script defining R")
        return [run_command("survey", [ns.check, sess.env["R"]], {"samples": ns.samples},
                            window=ns.window, seed=ns.seed, labels=[ns.check, "R"])]
    if ns.command in ("check", "crosscheck"):
        raw = list(ns.args)
        head = ns.mode if ns.command == "check" else ns.lemma
        kinds = ("module", "complex") if ns.command == "crosscheck" else ("module",)
    else:
        raw = [getattr(ns, f"arg{i}") for i in range(len(USAGE_ARGS[ns.command]))]
        head = None
        kinds = ("module", "complex") if ns.command == "depth" else ("module",)
    objs = [sess.object_arg(t, i, kinds) for i, t in enumerate(raw)]
    options = {}
    if getattr(ns, "index", None) is not None:
        options["index"] = ns.index
    args = ([head] if head else []) + objs
    labels = ([head] if head else []) + raw
    return [run_command(ns.command, args, options, window=ns.window, seed=ns.seed, labels=labels)]


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.timeout:
        def on_alarm(signum, frame):
            raise _Timeout()
        signal.signal(signal.SIGALRM, on_alarm)
        signal.setitimer(signal.ITIMER_REAL, ns.timeout)
    try:
        reports = _execute(ns)
    except _Timeout:
        print(f"depthlab: error: timed out after {ns.timeout} s", file=sys.stderr)
        return EXIT_USER
    except ParseError as exc:
        print(f"depthlab: syntax error at line {exc.line}, column {exc.col}: {exc.message}", file=sys.stderr)
        return EXIT_USER
    except (UserError, SessionError, OSError, KeyError) as exc:
        print(f"depthlab: error: {exc}", file=sys.stderr)
        return EXIT_USER
    except (CrosscheckFailure, AssertionError) as exc:
        print(f"depthlab: internal assertion failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    finally:
        if ns.timeout:
            signal.setitimer(signal.ITIMER_REAL, 0)
    body = reports if ns.command == "run" else reports[0]
    sys.stdout.buffer.write(emit_report(body, ns.format))
    sys.stdout.flush()
    return EXIT_FAIL if any(r.failed for r in reports) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
