"""Exception hierarchy.

Errors split in two families so front ends can map them to exit codes:
``InputError`` for malformed or invalid input data, ``ComputationError`` for
bounds, ambiguities and violated preconditions met while computing.
"""

from __future__ import annotations


class PargroupError(Exception):
    pass


class InputError(PargroupError, ValueError):
    pass


class ComputationError(PargroupError):
    pass


# -- group tables ---------------------------------------------------------

class NotLatinSquare(InputError):
    pass


class NoIdentity(InputError):
    pass


class NoInverse(InputError):
    pass


class NotAssociative(InputError):
    pass


class BadAction(InputError):
    pass


class SubsetMissingIdentity(InputError):
    pass


class GroupMismatch(InputError):
    pass


class InvalidInput(InputError):
    pass


class NotAPartialRep(InputError):
    def __init__(self, violation):
        self.violation = violation
        super().__init__(f"not a partial representation: {violation}")


# -- bounds ---------------------------------------------------------------

class BoundExceeded(ComputationError):
    pass


class ClosureTooLarge(BoundExceeded):
    pass


class LatticeTooLarge(BoundExceeded):
    pass


class DirectBoundExceeded(BoundExceeded):
    pass


class DimensionBoundExceeded(BoundExceeded):
    pass


# -- decomposition --------------------------------------------------------

class NonIntegralMultiplicity(ComputationError):
    pass


class AmbiguousDegrees(ComputationError):
    def __init__(self, fingerprint, solutions):
        self.fingerprint = fingerprint
        self.solutions = solutions
        super().__init__(
            f"character degrees not determined for subgroup fingerprint "
            f"{fingerprint}: {len(solutions)} candidate profiles"
        )


class PreconditionViolated(ComputationError):
    REASONS = ("NotDivisor", "OrderTwiceK", "PrimeCondition")

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)
