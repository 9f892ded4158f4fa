"""Command-line entry point: batch macro execution and the interactive shell."""

from __future__ import annotations

import argparse
import sys

from ..errors import CommandError, VisError
from ..events import ingest_events
from ..geometry_io import load_geometry
from .session import Session


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multivis",
        description="Multi-driver detector visualisation shell.",
    )
    parser.add_argument(
        "--geometry", metavar="FILE",
        help="geometry description (JSON); default is the built-in demo detector",
    )
    parser.add_argument(
        "--events", metavar="FILE",
        help="line-delimited event file preloaded into the event store",
    )
    parser.add_argument("--macro", metavar="FILE", help="command macro to execute")
    parser.add_argument(
        "--batch", action="store_true",
        help="exit after the macro; exit code 0 iff it had no errors",
    )
    parser.add_argument(
        "--out-dir", metavar="DIR", default=None,
        help="directory for driver output files (default: current directory)",
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        geometry = load_geometry(args.geometry) if args.geometry else None
    except VisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    session = Session(geometry=geometry, out_dir=args.out_dir)
    if args.events:
        try:
            for event in ingest_events(args.events):
                session.vis.event_store.store(event)
        except VisError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1

    exit_code = 0
    if args.macro:
        status = session.execute_macro(args.macro)
        session.report(status, echo_success=True)
        exit_code = 0 if status.ok else 1
    if args.batch:
        return exit_code

    while True:
        try:
            line = input("vis> ")
        except EOFError:
            print()
            break
        stripped = line.strip()
        if stripped == "exit":
            break
        if stripped == "help" or stripped.startswith("help "):
            prefix = stripped[4:].strip() or "/"
            try:
                print(session.help(prefix), end="")
            except CommandError as exc:
                print(f"error: {exc}")
            continue
        status = session.execute(line)
        session.report(status, echo_success=True)
    return exit_code


if __name__ == "__main__":
    raise SystemExit(main())
