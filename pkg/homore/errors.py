"""Exception hierarchy. Each error knows the CLI exit code it maps to."""


class HomoreError(Exception):
    exit_code = 1

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


# ----------------------------------------------------------------
# Domain errors (exit 1)
# ----------------------------------------------------------------
class DomainError(HomoreError):
    exit_code = 1


class DivisionByZeroError(DomainError):
    pass


class ZeroInverseError(DomainError):
    pass


class LevelMismatchError(DomainError):
    pass


class AlgebraMismatchError(DomainError):
    pass


class AlgebraSpecError(DomainError):
    pass


class NotAssociativeError(DomainError):
    pass


class NotAnEndomorphismError(DomainError):
    pass


class ContextMismatchError(DomainError):
    pass


class ContextValidationError(DomainError):
    pass


class MissingInverseError(DomainError):
    pass


class CombinatorialGuardError(DomainError):
    pass


class NotASubmoduleError(DomainError):
    pass


class RingMismatchError(DomainError):
    pass


class NotAMorphismError(DomainError):
    pass


class ChainNotAscendingError(DomainError):
    pass


class EmptyFamilyError(DomainError):
    pass


class ZeroPolynomialError(DomainError):
    pass


class LatticeNotEnumerableError(DomainError):
    pass


# ----------------------------------------------------------------
# Parse / usage errors (exit 2)
# ----------------------------------------------------------------
class UsageError(HomoreError):
    exit_code = 2


class ParseError(UsageError):
    def __init__(self, message: str, position: int | None = None, details: dict | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message, details)
        self.position = position


class UnknownSymbolError(ParseError):
    pass


class ArityError(UsageError):
    pass


# Property checks that ran to completion but found counterexamples
PROPERTY_FAILED_EXIT = 3
