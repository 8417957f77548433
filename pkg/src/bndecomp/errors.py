"""Exception types shared across the package."""


class DecompError(Exception):
    """Base class for all package errors."""


class ParseError(DecompError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NetworkError(DecompError, ValueError):
    """Structurally invalid network, graph or hypergraph."""


class OrderingError(DecompError, ValueError):
    """Ordering is not a bijection over the graph's nodes."""


class NotChordalError(DecompError, ValueError):
    pass


class StateOverflowError(DecompError, OverflowError):
    pass


class InfeasibleError(DecompError):
    """Requested exhaustive search exceeds its size limit."""
