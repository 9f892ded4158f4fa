"""Drawing attributes, colours, and the typed AttDef/AttValue system."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional


@dataclass(frozen=True)
class Colour:
    r: float
    g: float
    b: float
    a: float = 1.0

    def __post_init__(self):
        for field_name in ("r", "g", "b", "a"):
            v = getattr(self, field_name)
            object.__setattr__(self, field_name, min(1.0, max(0.0, float(v))))

    def rgb255(self) -> tuple[int, int, int]:
        return (round(self.r * 255), round(self.g * 255), round(self.b * 255))

    def scaled(self, factor: float) -> "Colour":
        return Colour(self.r * factor, self.g * factor, self.b * factor, self.a)

    def key(self) -> tuple:
        return (round(self.r, 6), round(self.g, 6), round(self.b, 6), round(self.a, 6))


WHITE = Colour(1, 1, 1)
BLACK = Colour(0, 0, 0)
RED = Colour(1, 0, 0)
GREEN = Colour(0, 1, 0)
BLUE = Colour(0, 0, 1)
CYAN = Colour(0, 1, 1)
MAGENTA = Colour(1, 0, 1)
YELLOW = Colour(1, 1, 0)
GRAY = Colour(0.5, 0.5, 0.5)

NAMED_COLOURS = {
    "white": WHITE,
    "black": BLACK,
    "red": RED,
    "green": GREEN,
    "blue": BLUE,
    "cyan": CYAN,
    "magenta": MAGENTA,
    "yellow": YELLOW,
    "gray": GRAY,
    "grey": GRAY,
}


LINE_STYLES = ("solid", "dashed", "dotted")
FORCED_STYLES = ("none", "wireframe", "surface")


@dataclass(frozen=True)
class VisAttributes:
    """Per-volume or per-primitive drawing properties."""

    visible: bool = True
    colour: Colour = WHITE
    line_width: float = 1.0
    line_style: str = "solid"
    forced_style: str = "none"
    daughters_invisible: bool = False

    def key(self) -> tuple:
        return (
            self.visible,
            self.colour.key(),
            round(self.line_width, 6),
            self.line_style,
            self.forced_style,
            self.daughters_invisible,
        )


DEFAULT_VIS = VisAttributes()


@dataclass(frozen=True)
class VisPatch:
    """Partial VisAttributes; None fields leave the base value alone."""

    visible: Optional[bool] = None
    colour: Optional[Colour] = None
    line_width: Optional[float] = None
    line_style: Optional[str] = None
    forced_style: Optional[str] = None
    daughters_invisible: Optional[bool] = None

    def apply(self, base: VisAttributes) -> VisAttributes:
        updates = {
            name: value
            for name, value in self.__dict__.items()
            if value is not None
        }
        return replace(base, **updates) if updates else base


@dataclass(frozen=True)
class AttDef:
    key: str
    description: str
    value_kind: str  # text | int | double | 3-vector
    dimensioned: bool = False


@dataclass(frozen=True)
class AttValue:
    key: str
    value: str


TOUCHABLE_ATTDEFS = {
    d.key: d
    for d in (
        AttDef("Density", "Material Density", "double", True),
        AttDef("DmpSol", "Dump of Solid properties", "text"),
        AttDef("EType", "Entity Type", "text"),
        AttDef("LVol", "Logical Volume", "text"),
        AttDef("Material", "Material Name", "text"),
        AttDef("PVPath", "Physical Volume Path", "text"),
        AttDef("Radlen", "Material Radiation Length", "double", True),
        AttDef("Region", "Cuts Region", "text"),
        AttDef("RootRegion", "Root Region (0/1 = false/true)", "int"),
        AttDef("Solid", "Solid Name", "text"),
        AttDef("State", "Material State (undefined, solid, liquid, gas)", "text"),
        AttDef("Trans", "Transformation of volume", "text"),
    )
}

TRAJECTORY_ATTDEFS = {
    d.key: d
    for d in (
        AttDef("CPN", "Creator Process Name", "text"),
        AttDef("Ch", "Charge", "double", True),
        AttDef("ID", "Track ID", "int"),
        AttDef("IKE", "Initial kinetic energy", "double", True),
        AttDef("IMag", "Initial momentum magnitude", "double", True),
        AttDef("IMom", "Initial momentum", "3-vector", True),
        AttDef("NTP", "No. of points", "int"),
        AttDef("PDG", "PDG Encoding", "int"),
        AttDef("PID", "Parent ID", "int"),
        AttDef("PN", "Particle Name", "text"),
    )
}

EVENT_ATTDEFS = {"EventID": AttDef("EventID", "Event ID", "int")}

HIT_ATTDEFS = {
    d.key: d
    for d in (
        AttDef("Pos", "Hit Position", "3-vector", True),
        AttDef("EDep", "Energy Deposit", "double", True),
        AttDef("Det", "Detector Name", "text"),
    )
}


def resolve_attvalues(attvalues, attdefs: dict[str, AttDef]) -> None:
    """Raise ValueError when any AttValue key lacks a matching AttDef."""
    for av in attvalues:
        if av.key not in attdefs:
            raise ValueError(f"AttValue key '{av.key}' has no AttDef")
