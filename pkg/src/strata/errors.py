"""Exceptions and validation-report vocabulary shared across the package.

Validators return lists of :class:`Violation` (empty list = valid) so a
caller can show every broken invariant at once.  Exceptions are reserved
for structural problems that make a check meaningless (wrong shapes,
unknown names, incompatible categories) and for internal consistency
failures.
"""

from __future__ import annotations

from dataclasses import dataclass


class StrataError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(StrataError):
    """Input has the wrong shape or violates a precondition of a check."""


class UnknownNameError(StrataError):
    """A lookup by name failed."""

    def __init__(self, kind: str, name: str, available: list[str] | None = None):
        self.kind = kind
        self.name = name
        self.available = sorted(available) if available else []
        msg = f"unknown {kind} {name!r}"
        if self.available:
            msg += f" (available: {', '.join(self.available)})"
        super().__init__(msg)


class CategoryMismatchError(StrataError):
    """Two objects that must live over the same category do not."""


class ConsistencyError(StrataError):
    """Independent computation paths disagree, or a float residual is too

    large to round safely.  Signals corrupt input data rather than a bug
    in the caller.
    """


class MoveError(StrataError):
    """A rewrite move is not applicable to the given surface."""


class InvalidDataError(StrataError):
    """An object failed its validation report; carries the violations."""

    def __init__(self, message: str, report=None):
        self.report = list(report or [])
        if self.report:
            message = message + ": " + "; ".join(str(v) for v in self.report)
        super().__init__(message)


class DslError(StrataError):
    """Problem in a surface-description text.  Carries a 1-based position."""

    def __init__(self, message: str, line: int, col: int, kind: str = "syntax"):
        self.message = message
        self.line = line
        self.col = col
        self.kind = kind
        super().__init__(f"{line}:{col}: {message}")


@dataclass(frozen=True)
class Violation:
    """One failed invariant: a stable code plus a human-readable message."""

    code: str
    message: str

    def __str__(self) -> str:
        return f"[{self.code}] {self.message}"
