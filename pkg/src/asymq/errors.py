"""Semantic exception hierarchy shared by all asymq modules."""

from __future__ import annotations


class AsymqError(Exception):
    """Base class for all asymq errors."""


class DomainError(AsymqError, ValueError):
    """An argument lies outside its mathematical domain."""


class ConstraintError(AsymqError, ValueError):
    """A parameter tuple violates a structural constraint.

    ``violated`` names the failed inequality, e.g. ``"l <= min(m, k)"``.
    """

    def __init__(self, violated: str, message: str | None = None):
        self.violated = violated
        super().__init__(message if message is not None else violated)


class SizeCapError(AsymqError, RuntimeError):
    """A computation exceeds a configured size cap."""


class InvariantError(AsymqError, RuntimeError):
    """An internal cross-check failed; indicates a bug, not bad input."""
