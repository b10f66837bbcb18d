"""Error taxonomy shared by every module and mapped to CLI exit codes."""

from __future__ import annotations


class HyperzeroError(Exception):
    """Base class; `status` is the payload string, `exit_code` the process code."""

    status = "error"
    exit_code = 1

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details


class InputError(HyperzeroError, ValueError):
    status = "input-error"
    exit_code = 2


class ResourceError(HyperzeroError):
    status = "resource-error"
    exit_code = 3


class NumericError(HyperzeroError, ArithmeticError):
    status = "numeric-error"
    exit_code = 4


class PoleError(NumericError):
    """A map was evaluated at one of its poles."""


class DegenerateRatioError(NumericError):
    """Both the numerator and the denominator of an occupation ratio vanish."""


class TheoremViolation(HyperzeroError):
    status = "theorem-violation"
    exit_code = 5


class Refusal(HyperzeroError):
    """The request lies outside the region where the method is certified."""

    status = "refusal"
    exit_code = 6
