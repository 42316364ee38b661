"""Exception types shared across the package."""


class SimulationError(ValueError):
    """Base class for all errors raised by this package."""


# linear algebra
class NotSquare(SimulationError):
    pass


class NotHermitian(SimulationError):
    pass


class EmptyMatrix(SimulationError):
    pass


class ShapeMismatch(SimulationError):
    pass


# registers and states
class SizeOverflow(SimulationError):
    pass


class UnknownFamily(SimulationError):
    pass


class BadAmplitudes(SimulationError):
    pass


class IndexOutOfRange(SimulationError):
    pass


class DuplicateIndex(SimulationError):
    pass


class SameQubit(SimulationError):
    pass


class NotUnitary(SimulationError):
    pass


class LayoutMismatch(SimulationError):
    pass


class NotAState(SimulationError):
    pass


# gates
class ParamOutOfRange(SimulationError):
    pass


# attractor solver
class TooLarge(SimulationError):
    pass


class BadLambda(SimulationError):
    pass


class NotSolved(SimulationError):
    pass


class BadParams(SimulationError):
    pass


# information measures
class BadBasis(SimulationError):
    pass


class UnknownCase(SimulationError):
    pass


# experiment harness
class ConfigInvalid(SimulationError):
    pass


class ParseError(ConfigInvalid):
    pass


class RangeError(ConfigInvalid):
    pass
