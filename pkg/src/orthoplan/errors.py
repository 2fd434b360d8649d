"""Exception hierarchy.

Every error carries an ``exit_code`` so the command line can map failures
onto its documented status codes without inspecting types.
"""

from __future__ import annotations


class OrthoPlanError(Exception):
    exit_code = 5


# planar core
class GraphError(OrthoPlanError):
    exit_code = 2


class NonPlanar(OrthoPlanError):
    exit_code = 3


class InconsistentRotation(GraphError):
    pass


class UnknownOuterFace(GraphError):
    pass


class TooFewVertices(OrthoPlanError, ValueError):
    pass


class PreconditionViolated(OrthoPlanError, ValueError):
    pass


# triangles
class NoSite(OrthoPlanError):
    exit_code = 4


class NoKLSite(NoSite):
    pass


class NoKTSite(NoSite):
    pass


class Unhittable(OrthoPlanError):
    pass


class EdgeOnOuterFace(OrthoPlanError):
    pass


# completion
class TooManyCips(OrthoPlanError):
    pass


class ArcMismatch(OrthoPlanError):
    pass


class NotFourConnected(OrthoPlanError):
    pass


# ordering
class Stuck(OrthoPlanError):
    def __init__(self, message: str, state: dict | None = None) -> None:
        super().__init__(message)
        self.state = state or {}


class NoCategory(OrthoPlanError):
    pass


# rel
class ContourBroken(OrthoPlanError):
    pass


class RelInvalid(OrthoPlanError):
    pass


class FlipBreaksRel(RelInvalid):
    pass


# layout
class NotRealizable(OrthoPlanError):
    pass


class NotAdjacent(OrthoPlanError):
    pass


class NotRectilinear(OrthoPlanError, ValueError):
    pass


class SelfIntersecting(NotRectilinear):
    pass


class ZeroAreaEdge(NotRectilinear):
    pass


class TooLarge(OrthoPlanError, ValueError):
    pass
