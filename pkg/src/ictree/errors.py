"""Exception types shared across the package."""


class IctError(Exception):
    """Base class for all package-specific errors."""


class SingletonContraction(IctError):
    """Contracting an edge whose two parts are both singletons (would empty a part)."""


class NotAMatching(IctError):
    """Edge set has a repeated endpoint."""


class CyclicProjection(IctError):
    """Projected edge set contains a cycle on the parts."""


class EdgeAbsent(IctError):
    """Referenced edge is not in the graph."""


class EmptyPart(IctError):
    """Operation would leave (or found) an empty part."""


class DuplicateVertex(IctError):
    """Same vertex declared twice."""


class NotComplete(IctError):
    """Operation requires a complete multipartite graph."""


class NotQuasiComplete(IctError):
    """Operation requires a complete or quasi-complete multipartite graph."""


class NotMaximum(IctError):
    """Supplied matching is not maximum (an augmenting path exists)."""


class TooLarge(IctError):
    """Brute-force guard tripped; instance too big for exhaustive search."""


class Unsupported(IctError):
    """Requested algorithm does not apply to this instance (or exceeds its guard)."""


class ParseError(IctError):
    """Instance file is malformed."""


class BadParams(IctError):
    """Generator parameters are invalid."""


class EmptyStream(IctError):
    """No solutions available where at least one was required."""


class EmptyTreeWarning(UserWarning):
    """Max-measure requested on an empty tree; 0.0 returned by convention."""
