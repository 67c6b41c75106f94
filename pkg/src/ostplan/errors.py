"""Exception types raised by ostplan.

Everything inherits from OstplanError so callers can catch the whole family
with one clause.  Graph construction problems carry enough context (node ids,
edges) to point at the offending part of the input.
"""

from __future__ import annotations


class OstplanError(Exception):
    """Base class for all errors raised by this package."""


class NotSimple(OstplanError):
    """The rotation system contains a self-loop or a repeated neighbor."""

    def __init__(self, node: int, neighbor: int):
        self.node = int(node)
        self.neighbor = int(neighbor)
        super().__init__(f"rotation of node {self.node} repeats or loops on {self.neighbor}")


class AsymmetricEdge(OstplanError):
    """Some node lists a neighbor that does not list it back."""

    def __init__(self, node: int, neighbor: int):
        self.node = int(node)
        self.neighbor = int(neighbor)
        super().__init__(f"edge {self.node}-{self.neighbor} has no reverse direction")


class NotTriangulated(OstplanError):
    """A traced face has more than three sides, or the edge count is off."""

    def __init__(self, message: str):
        super().__init__(message)


class ExteriorNotAFace(OstplanError):
    """The declared exterior triple is not a face of the embedding."""

    def __init__(self, triple: tuple[int, int, int]):
        self.triple = tuple(int(v) for v in triple)
        super().__init__(f"exterior {self.triple} does not trace a face")


class WrongEdgeCount(OstplanError):
    """Edge count disagrees with what a triangulation of this size must have."""

    def __init__(self, node_count: int, edges: int, expected: int):
        self.node_count = int(node_count)
        self.edges = int(edges)
        self.expected = int(expected)
        super().__init__(
            f"{self.node_count} nodes need {self.expected} edges, found {self.edges}"
        )


class NotANeighbor(OstplanError):
    """A query named a node pair that is not an edge."""

    def __init__(self, node: int, other: int):
        self.node = int(node)
        self.other = int(other)
        super().__init__(f"{self.other} is not adjacent to {self.node}")


class InternalError(OstplanError):
    """An invariant the pipeline relies on failed; indicates a bug, not bad input."""


class CyclicDependency(OstplanError):
    """The placement recurrence revisited a value still being computed."""


class NonUniqueCoveringNode(OstplanError):
    """Branch compaction found zero or several candidates above a branch."""

    def __init__(self, node: int, message: str):
        self.node = int(node)
        super().__init__(f"node {self.node}: {message}")


class BudgetExceeded(OstplanError):
    """Exhaustive search hit its step budget before finishing."""


class ParseError(OstplanError):
    """A text file violated its expected format."""

    def __init__(self, line_no: int, message: str):
        self.line_no = int(line_no)
        super().__init__(f"line {self.line_no}: {message}")
