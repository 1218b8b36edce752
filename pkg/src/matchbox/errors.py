"""Exception hierarchy shared by every matchbox module."""


class MatchboxError(Exception):
    """Base class for all library errors."""


class EdgeTypeMismatch(MatchboxError):
    """A grafting would attach a leaf by a non-empty edge type or a tree by ``e``."""


class LeafDecomposition(MatchboxError):
    """The leaf ``|`` has no root vertex to decompose."""


class InvalidVertex(MatchboxError):
    """A vertex handle is outside the preorder range of a rooted tree."""


class AlphabetMismatch(MatchboxError):
    """An element or index uses a symbol outside the declared alphabets."""


class DimensionMismatch(MatchboxError):
    """Tensors or matrices of incompatible sizes were combined."""


class BudgetExceeded(MatchboxError):
    """An exhaustive search grid is larger than the configured cap."""


class PreconditionFailed(MatchboxError):
    """An input structure does not satisfy the hypotheses of a construction."""


class NonzeroWeight(MatchboxError):
    """A weight-zero-only construction was requested for a weighted family."""


class MissingOperation(MatchboxError):
    """A structure lacks an operation family required by an axiom set."""


class CapExceeded(MatchboxError):
    """An enumeration request exceeds the configured size cap."""
