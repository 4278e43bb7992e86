"""Exception types and the shared violation record."""

from __future__ import annotations

from dataclasses import dataclass


class TreeRepError(Exception):
    """Base class for all library errors."""


class InputError(TreeRepError):
    """Invalid argument or violated precondition (CLI exit code 2)."""


class SchemaError(InputError):
    """Malformed interchange JSON, with a path to the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class DeskScaleError(InputError):
    """Out of desk-scale range for an exhaustive or factorial procedure."""


@dataclass(frozen=True)
class Violation:
    """One failed check: a stable code plus a human-readable detail."""

    code: str
    detail: str

    def __str__(self) -> str:
        return f"{self.code}: {self.detail}"
