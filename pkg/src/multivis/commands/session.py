"""A shell session: the command tree bound to one visualisation manager."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from ..attributes import BLUE, WHITE, Colour
from ..errors import CommandError, VisError
from ..fixtures import build_b1
from ..geometry import GeometryModel
from ..kernel import VERBOSITY_LEVELS, VisManager
from .tree import CommandTree, bind, parse

MAX_MACRO_DEPTH = 8


@dataclass
class CommandStatus:
    level: str  # success | warning | error
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.level != "error"


class Session:
    def __init__(self, geometry: GeometryModel | None = None, out_dir=None,
                 clock=None):
        self.vis = VisManager(
            geometry=geometry if geometry is not None else build_b1(),
            out_dir=out_dir,
            clock=clock,
        )
        self.draw_colour: Colour = WHITE
        self.draw_line_width: float = 1.0
        self.text_colour: Colour = BLUE
        self.text_layout: str = "left"
        self.current_touchable: tuple = ()
        self.macro_depth = 0
        self.tree = CommandTree()
        from .vis_commands import register_commands

        register_commands(self)

    # --- execution ----------------------------------------------------------

    def execute(self, line: str) -> CommandStatus:
        try:
            cmd = parse(self.tree, line)
        except CommandError as exc:
            return CommandStatus("error", str(exc))
        if cmd is None:
            return CommandStatus("success")
        if cmd.node.unsupported:
            return CommandStatus(
                "warning", f"{cmd.path} is recognised but not supported here"
            )
        try:
            bound = bind(cmd.node, cmd.tokens)
        except CommandError as exc:
            return CommandStatus("error", f"{cmd.path}: {exc}")
        try:
            result = cmd.node.handler(**bound)
        except VisError as exc:
            return CommandStatus("error", f"{cmd.path}: {exc}")
        if isinstance(result, CommandStatus):
            return result
        return CommandStatus("success", result or "")

    def execute_macro(self, path) -> CommandStatus:
        """Run a command file; the first error aborts the remainder."""
        p = Path(path)
        if not p.is_file():
            return CommandStatus("error", f"macro not found: {path}")
        if self.macro_depth >= MAX_MACRO_DEPTH:
            return CommandStatus(
                "error",
                f"{path}: macro nesting deeper than {MAX_MACRO_DEPTH}",
            )
        self.macro_depth += 1
        try:
            for lineno, raw in enumerate(p.read_text().splitlines(), start=1):
                status = self.execute(raw)
                self.report(status)
                if status.level == "error":
                    return CommandStatus(
                        "error", f"{path}:{lineno}: {status.message}"
                    )
        finally:
            self.macro_depth -= 1
        return CommandStatus("success", f"executed {path}")

    def report(self, status: CommandStatus, echo_success: bool = False) -> None:
        """Print a status line, gated by the kernel verbosity."""
        threshold = VERBOSITY_LEVELS.index(self.vis.verbosity)
        if status.level == "error" and threshold >= 1:
            print(f"error: {status.message}")
        elif status.level == "warning" and threshold >= 2:
            print(f"warning: {status.message}")
        elif status.level == "success" and status.message and (
            threshold >= 3 or echo_success
        ):
            print(status.message)

    def help(self, prefix: str = "/") -> str:
        return self.tree.help_text(prefix or "/")

    # --- state ----------------------------------------------------------

    def state_digest(self) -> str:
        extra = {
            "kernel": self.vis.state_digest(),
            "draw_colour": self.draw_colour.key(),
            "draw_line_width": round(self.draw_line_width, 9),
            "text_colour": self.text_colour.key(),
            "text_layout": self.text_layout,
            "current_touchable": list(map(list, self.current_touchable)),
        }
        blob = json.dumps(extra, sort_keys=True)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()
