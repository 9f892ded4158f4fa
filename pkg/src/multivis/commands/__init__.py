"""The /vis command shell: tree, session, and CLI."""

from .session import CommandStatus, Session
from .tree import CommandLine, CommandNode, CommandTree, Param, bind, parse

__all__ = [
    "CommandLine",
    "CommandNode",
    "CommandStatus",
    "CommandTree",
    "Param",
    "Session",
    "bind",
    "parse",
]
