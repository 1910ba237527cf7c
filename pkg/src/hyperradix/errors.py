"""Exception hierarchy shared by every module."""


class HyperradixError(Exception):
    """Base class for all library errors."""


class NotInvertible(HyperradixError, ZeroDivisionError):
    """Division by a zero divisor (an element with vanishing norm)."""


class ZeroDivisorModulus(HyperradixError, ZeroDivisionError):
    """A modulus or base with zero norm was used where a unit-free quotient is needed."""


class BadBaseShape(HyperradixError, ValueError):
    """The base does not have the shape an operation requires."""


class InvalidBase(HyperradixError, ValueError):
    """The base/digit pair cannot drive digit extraction at all."""


class DigitOutOfRange(HyperradixError, ValueError):
    """A digit is not a member of the base's digit set."""


class NoContraction(HyperradixError, ValueError):
    """The base is not contracting in the ring's lattice norm."""


class CapExceeded(HyperradixError, ValueError):
    """Full enumeration would exceed the configured cap and sampling is disabled."""


class NonTerminating(HyperradixError):
    """Digit extraction revisited a state.

    ``cycle`` holds the repeating states in visiting order; stepping the last
    one returns to the first.  ``prefix`` holds the states seen before the
    cycle was entered.
    """

    def __init__(self, message, cycle, prefix=(), sigma=None):
        super().__init__(message)
        self.cycle = tuple(cycle)
        self.prefix = tuple(prefix)
        self.sigma = sigma


class IterationLimit(HyperradixError):
    """Digit extraction hit the hard iteration cap without repeating a state."""


class ParseError(HyperradixError, ValueError):
    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position
