"""Command tree and line parser for the /vis/... shell.

Grammar: the first whitespace token is the slash-separated command path,
the rest are arguments. `#` starts a comment anywhere on the line, blank
lines are no-ops, and a `!` argument selects that parameter's default.
Trailing-text parameters absorb the remainder of the line.
"""

from __future__ import annotations

import difflib
from dataclasses import dataclass, field
from typing import Callable, Optional

from .. import units
from ..attributes import NAMED_COLOURS, Colour
from ..errors import CommandError

_BOOL_TOKENS = {
    "true": True,
    "1": True,
    "on": True,
    "false": False,
    "0": False,
    "off": False,
}


@dataclass
class Param:
    name: str
    kind: str  # string | int | double | bool | choice | unit | colour | trailing | pairs
    default: Optional[str] = None
    omittable: bool = False
    choices: tuple[str, ...] = ()
    unit_category: Optional[str] = None
    unit_required: bool = False

    def signature(self) -> str:
        kind = self.kind
        if self.kind == "unit":
            kind = f"unit:{self.unit_category}"
        elif self.kind == "choice":
            kind = "|".join(self.choices)
        text = f"{self.name}({kind})"
        if self.default is not None:
            text += f"={self.default}"
        if self.omittable:
            text = f"[{text}]"
        return text


@dataclass
class CommandNode:
    segment: str
    guidance: str = ""
    params: list[Param] = field(default_factory=list)
    handler: Optional[Callable] = None
    unsupported: bool = False
    children: dict[str, "CommandNode"] = field(default_factory=dict)

    @property
    def executable(self) -> bool:
        return self.handler is not None or self.unsupported


class CommandTree:
    def __init__(self):
        self.root = CommandNode("")

    def register(
        self,
        path: str,
        guidance: str = "",
        params: list[Param] | tuple = (),
        handler: Callable | None = None,
        unsupported: bool = False,
    ) -> CommandNode:
        segments = [s for s in path.split("/") if s]
        node = self.root
        for seg in segments:
            node = node.children.setdefault(seg, CommandNode(seg))
        node.guidance = guidance or node.guidance
        node.params = list(params)
        node.handler = handler
        node.unsupported = unsupported
        return node

    def find(self, path: str) -> CommandNode | None:
        node = self.root
        for seg in (s for s in path.split("/") if s):
            node = node.children.get(seg)
            if node is None:
                return None
        return node

    def command_paths(self) -> list[str]:
        out: list[str] = []

        def walk(node: CommandNode, prefix: str):
            for seg, child in sorted(node.children.items()):
                path = f"{prefix}/{seg}"
                if child.executable:
                    out.append(path)
                walk(child, path)

        walk(self.root, "")
        return out

    def suggest(self, path: str) -> str | None:
        matches = difflib.get_close_matches(path, self.command_paths(), n=1, cutoff=0.5)
        return matches[0] if matches else None

    def help_text(self, prefix: str = "/") -> str:
        node = self.find(prefix) if prefix != "/" else self.root
        if node is None:
            hint = self.suggest(prefix)
            raise CommandError(
                f"unknown command path '{prefix}'"
                + (f" (did you mean {hint}?)" if hint else "")
            )
        lines: list[str] = []
        base = prefix.rstrip("/") if prefix != "/" else ""

        def walk(n: CommandNode, path: str):
            if n.executable:
                sig = " ".join(p.signature() for p in n.params)
                mark = " (recognised, not supported)" if n.unsupported else ""
                lines.append(f"{path} {sig}".rstrip() + mark)
                if n.guidance:
                    lines.append(f"    {n.guidance}")
            for seg, child in sorted(n.children.items()):
                walk(child, f"{path}/{seg}")

        walk(node, base)
        return "\n".join(lines) + ("\n" if lines else "")


@dataclass
class CommandLine:
    raw: str
    path: str
    tokens: list[str]
    node: CommandNode

    def render(self) -> str:
        return " ".join([self.path] + self.tokens)


def strip_comment(line: str) -> str:
    hash_pos = line.find("#")
    return line if hash_pos < 0 else line[:hash_pos]


def parse(tree: CommandTree, line: str) -> CommandLine | None:
    """Parse a line; None means a no-op (blank or comment)."""
    text = strip_comment(line).strip()
    if not text:
        return None
    parts = text.split()
    path = parts[0]
    if not path.startswith("/"):
        raise CommandError(f"commands start with '/': {path!r}")
    node = tree.find(path)
    if node is None or not node.executable:
        hint = tree.suggest(path)
        raise CommandError(
            f"unknown command '{path}'" + (f" (did you mean {hint}?)" if hint else "")
        )
    return CommandLine(raw=line, path=path, tokens=parts[1:], node=node)


def _convert(param: Param, token: str):
    if param.kind == "int":
        try:
            return int(token)
        except ValueError:
            raise CommandError(f"{param.name}: expected an integer, got {token!r}")
    if param.kind == "double":
        try:
            return float(token)
        except ValueError:
            raise CommandError(f"{param.name}: expected a number, got {token!r}")
    if param.kind == "bool":
        value = _BOOL_TOKENS.get(token.lower())
        if value is None:
            raise CommandError(f"{param.name}: expected true/false, got {token!r}")
        return value
    if param.kind == "choice":
        if token not in param.choices:
            raise CommandError(
                f"{param.name}: {token!r} not one of {'|'.join(param.choices)}"
            )
        return token
    return token


def _default_value(param: Param):
    if param.default is None:
        if param.omittable:
            return None
        raise CommandError(f"{param.name}: required parameter has no default")
    if param.kind == "colour":
        return parse_colour_tokens([param.default])
    if param.kind == "unit":
        return units.CATEGORIES[param.unit_category][param.default]
    return _convert(param, param.default)


def parse_colour_tokens(tokens: list[str]) -> Colour:
    if len(tokens) == 1 and tokens[0] in NAMED_COLOURS:
        return NAMED_COLOURS[tokens[0]]
    if len(tokens) in (3, 4):
        try:
            comps = [float(t) for t in tokens]
        except ValueError:
            raise CommandError(f"bad colour {' '.join(tokens)!r}")
        return Colour(*comps)
    raise CommandError(
        f"bad colour {' '.join(tokens)!r} (use a name or r g b [a])"
    )


def bind(node: CommandNode, tokens: list[str]) -> dict:
    """Convert argument tokens to values according to the node's parameters."""
    values: dict = {}
    queue = list(tokens)
    for param in node.params:
        if param.kind == "trailing":
            if queue and queue[0] == "!" and len(queue) == 1:
                queue.pop(0)
            if queue:
                values[param.name] = " ".join(queue)
                queue.clear()
            else:
                values[param.name] = (
                    param.default if param.default is not None else ""
                )
                if not param.omittable and param.default is None:
                    raise CommandError(f"{param.name}: missing text argument")
            continue
        if param.kind == "pairs":
            if len(queue) % 2 != 0:
                raise CommandError(
                    f"{param.name}: expected name/copy-number pairs"
                )
            pairs = []
            while queue:
                name = queue.pop(0)
                copy_tok = queue.pop(0)
                try:
                    pairs.append((name, int(copy_tok)))
                except ValueError:
                    raise CommandError(
                        f"{param.name}: copy number must be an integer, got"
                        f" {copy_tok!r}"
                    )
            values[param.name] = tuple(pairs)
            continue
        if param.kind == "colour":
            if not queue or queue[0] == "!":
                if queue:
                    queue.pop(0)
                if param.default is None and not param.omittable:
                    raise CommandError(f"{param.name}: missing colour")
                values[param.name] = (
                    parse_colour_tokens([param.default]) if param.default else None
                )
                continue
            if queue[0] in NAMED_COLOURS:
                values[param.name] = parse_colour_tokens([queue.pop(0)])
                continue
            comps = []
            while queue and len(comps) < 4:
                try:
                    float(queue[0])
                except ValueError:
                    break
                comps.append(queue.pop(0))
            values[param.name] = parse_colour_tokens(comps)
            continue
        if param.kind == "unit":
            if queue and queue[0] != "!" and units.is_unit(queue[0], param.unit_category):
                values[param.name] = units.CATEGORIES[param.unit_category][
                    queue.pop(0)
                ]
                continue
            if queue and queue[0] == "!":
                queue.pop(0)
                values[param.name] = _default_value(param)
                continue
            if param.unit_required:
                got = queue[0] if queue else "nothing"
                raise CommandError(
                    f"{param.name}: expected a {param.unit_category} unit, got {got!r}"
                )
            values[param.name] = _default_value(param)
            continue
        # plain single-token parameter
        if not queue:
            values[param.name] = _default_value(param)
            continue
        token = queue.pop(0)
        if token == "!":
            values[param.name] = _default_value(param)
        else:
            values[param.name] = _convert(param, token)
    if queue:
        raise CommandError(f"too many arguments: {' '.join(queue)!r} left over")
    return values
