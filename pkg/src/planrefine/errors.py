"""Exception hierarchy shared across the package.

Every error raised by planrefine derives from :class:`PlanError`, so callers
(and the CLI) can catch one type. Stage-specific subclasses live in the module
that raises them; only errors referenced by more than one module sit here.
"""

from __future__ import annotations


class PlanError(Exception):
    """Base class for all planrefine errors."""


class SchemaError(PlanError):
    """Plan text violates the layout schema (missing key, wrong arity, bad type)."""

    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")


class GeometryError(PlanError):
    """Geometry is invalid: zero-length, non-axis-aligned, or outside the extent."""


class NonZeroElevation(PlanError):
    """A coordinate triple carries a non-zero third component."""


class NoJsonObjectFound(PlanError):
    """A raw response contains no balanced top-level JSON object."""
