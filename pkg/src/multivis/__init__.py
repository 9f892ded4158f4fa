"""multivis: a multi-driver detector visualisation kernel."""

__version__ = "0.1.0"
