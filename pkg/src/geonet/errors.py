"""Exception hierarchy shared by all geonet modules."""


class GeonetError(Exception):
    """Base class for every error raised by geonet."""


class GraphError(GeonetError, ValueError):
    pass


class LoopRejected(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class Disconnected(GraphError):
    pass


class BadVertex(GraphError):
    pass


class BadFamilyParam(GeonetError, ValueError):
    pass


class FormatError(GeonetError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BusNotClassifiable(GeonetError, TypeError):
    """The shared-medium bus is not a simple graph."""


class InstanceTooLarge(GeonetError, ValueError):
    pass


class GateFailed(GeonetError, RuntimeError):
    """A generated instance did not pass its geodeticity/diameter gate."""
