"""Exception types shared across the package."""

from __future__ import annotations


class GraphError(ValueError):
    """Invalid graph construction input."""

    def __init__(self, message: str, pair=None):
        super().__init__(message)
        self.pair = pair


class SelfLoop(GraphError):
    pass


class ParallelEdge(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class ParseError(ValueError):
    """Malformed graph or edge-list text."""


class PreconditionViolated(ValueError):
    pass


class InternalInvariant(AssertionError):
    """A condition the algorithm guarantees did not hold; indicates a bug."""


class NoCoverExists(ValueError):
    """The graph admits no (triangle-free) 2-edge-cover."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class Infeasible(ValueError):
    """The graph has no 2-edge-connected spanning subgraph."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class StructureViolation(ValueError):
    """A rewrite step met a configuration that a structured graph cannot contain.

    ``witness`` holds the offending vertex set (and ``kind`` names the
    forbidden structure it exhibits).
    """

    def __init__(self, message: str, kind: str, witness):
        super().__init__(message)
        self.kind = kind
        self.witness = witness


class BudgetExhausted(RuntimeError):
    def __init__(self, message: str, incumbent=None):
        super().__init__(message)
        self.incumbent = incumbent


class TooLarge(ValueError):
    pass


class EpsilonOutOfRange(ValueError):
    pass


class GenerationFailed(RuntimeError):
    pass
