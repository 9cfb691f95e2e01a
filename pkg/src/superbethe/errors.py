"""Errors shared across modules."""


class DivisionByZero(ZeroDivisionError):
    """Exact division by an identically zero scalar (e.g. g(u,u))."""


class PoleAtZero(ArithmeticError):
    """An eps-limit was requested but the reduced denominator vanishes at eps=0."""


class CardinalityMismatch(ValueError):
    """Parameter sets whose sizes must agree do not."""


class ArityMismatch(ValueError):
    """Operator/vector arities do not match."""


class SignatureMismatch(ValueError):
    """Graded objects built over different signatures were combined."""
