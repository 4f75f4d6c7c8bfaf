"""Shared control knobs and exception types."""

from __future__ import annotations

from dataclasses import dataclass


class ParseError(ValueError):
    """Raised for malformed expression text; carries the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class SeriesBudgetError(RuntimeError):
    """A series evaluation exhausted its term budget before reaching tolerance."""


class DegenerateExpressionError(RuntimeError):
    """Too many Monte Carlo samples hit zeros/poles (discard rate above the cap)."""


@dataclass(frozen=True)
class SeriesControl:
    """Tolerance and term budget governing every infinite-series evaluation.

    ``tol`` is an absolute target for the truncation error; ``max_terms``
    caps the work before :class:`SeriesBudgetError` is raised.
    """

    tol: float = 1e-12
    max_terms: int = 10_000_000

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")


DEFAULT_CONTROL = SeriesControl()

# Slack for "inside the closed disk" membership tests; the boundary has
# measure zero so only exact-arithmetic noise needs absorbing.
DISK_SLACK = 1e-12
