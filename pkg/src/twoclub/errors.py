"""Exception hierarchy shared across the toolkit."""

from __future__ import annotations


class TwoClubError(Exception):
    """Base class for all errors raised by this package."""


class GraphFormatError(TwoClubError):
    """A graph, script, cover or CNF file could not be parsed."""


class InvalidGraphError(TwoClubError):
    """Graph data violates simplicity, symmetry or id-range invariants."""


class InvalidOperationError(TwoClubError):
    """An edit operation does not apply to the graph it targets.

    ``index`` is the position of the failing op when it came from a script.
    """

    def __init__(self, message: str, index: int | None = None) -> None:
        super().__init__(message if index is None else f"op {index}: {message}")
        self.index = index


class InvalidCoverError(TwoClubError):
    """A cover is missing vertices or contains a set that is not a 2-club."""


class SizeBoundError(TwoClubError):
    """An exhaustive oracle was asked to handle a graph that is too large."""


class NotAForestError(TwoClubError):
    """A tree algorithm received a graph with a cycle."""


class FormulaError(TwoClubError):
    """A CNF formula or assignment violates the reduction preconditions."""
