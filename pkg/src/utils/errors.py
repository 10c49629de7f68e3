from typing import Any, Optional


class ColorGroupError(Exception):
    """Base class for every error raised by the toolkit."""


class MalformedInput(ColorGroupError, ValueError):
    """The caller handed over data that violates a precondition."""


class InvariantViolation(ColorGroupError):
    """An internal invariant failed; `witness` pins down where."""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class NotAGroup(MalformedInput):
    pass


class NotNormal(MalformedInput):
    pass


class NotAbelian(MalformedInput):
    pass


class OrderOutOfRange(MalformedInput):
    pass


class DomainTooLarge(MalformedInput):
    pass


class ComponentTooLarge(MalformedInput):
    pass


class NotIsometry(MalformedInput):
    pass


class DoesNotFixA(MalformedInput):
    pass


class NotBilinear(MalformedInput):
    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class NotASubcoset(InvariantViolation):
    pass


class FactorClassViolation(InvariantViolation):
    pass


class NotMember(ColorGroupError):
    """A permutation is outside the wreath tower it was decomposed against."""


class TopFactorNotIsomorphic(ColorGroupError):
    """The semisimple top factors of the two inputs differ."""
