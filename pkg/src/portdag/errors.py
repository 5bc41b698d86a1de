class PortDagError(Exception):
    """Base class for every error raised by the package."""


class IncompatibleJoin(PortDagError):
    pass


class UnknownVertex(PortDagError, KeyError):
    pass


class SchemeContractBroken(PortDagError):
    """A neighbourhood scheme returned a position not reachable from ω."""


class RuleContractBroken(PortDagError):
    """A rewrite touched border content or produced an unjoinable graph."""


class InvalidSequence(PortDagError, ValueError):
    pass


class ShapeMismatch(PortDagError):
    """The local graph does not have the shape a lattice rule expects."""


class IncompleteState(PortDagError):
    pass


class StateTypeMismatch(PortDagError, ValueError):
    pass


class BadIndex(PortDagError, ValueError):
    pass


class BudgetExceeded(PortDagError):
    pass


class Starved(PortDagError):
    pass


class UnknownPort(PortDagError, KeyError):
    pass


class LayoutMismatch(PortDagError, ValueError):
    pass


class EmptyConfig(PortDagError, ValueError):
    pass
