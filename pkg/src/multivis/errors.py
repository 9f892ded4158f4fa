"""Exception types shared across the package."""


class VisError(Exception):
    """Base class for all errors raised by multivis."""


class SolidError(VisError):
    """Bad shape parameters, tessellation bounds, or sampling preconditions."""


class GeometryError(VisError):
    """Hierarchy violations: overlaps, cycles, unknown volumes."""


class SceneError(VisError):
    """Scene registry or traversal protocol violations."""


class KernelError(VisError):
    """Visualisation-manager state errors (unknown systems, bad window specs)."""


class UnitError(VisError):
    """Unknown unit token or category."""


class CommandError(VisError):
    """Command-line parse or dispatch failure."""


class EventDataError(VisError):
    """Malformed event file content."""
