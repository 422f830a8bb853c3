"""Exception types shared across the package."""


class SizeRamseyError(Exception):
    """Base class for every reported failure."""


class CapExceeded(SizeRamseyError):
    """An exhaustive routine was asked to work beyond its configured size cap."""


class BudgetExceeded(SizeRamseyError):
    """A search ran out of its node budget before reaching a verdict."""


class TraceError(SizeRamseyError):
    """A build trace does not describe a member of the path-extension class."""


class TreeOrderError(SizeRamseyError):
    """An edge order is not a valid hypergraph-tree order."""


class NoExtension(SizeRamseyError):
    """No neighbour keeps an embedding good after adding a leaf."""


class NoCrossEdge(SizeRamseyError):
    """No host edge joins the two leaf sets of the grown binary trees."""


class NotFound(SizeRamseyError):
    """A search for a certified object finished without success."""


class HypothesisFailure(SizeRamseyError):
    """A checked hypothesis of an operation does not hold on the input."""


class AlignmentFailure(SizeRamseyError):
    """A connector could not be realigned onto an extensible copy."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class ValidationError(SizeRamseyError):
    """A structure fails one of its invariants."""
