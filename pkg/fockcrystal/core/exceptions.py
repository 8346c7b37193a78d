from fastapi import status
from typing import Optional, Dict, Any


class AppBaseException(Exception):
    """
    Base exception class for all custom application exceptions.

    Carries an HTTP status for the API layer and an exit code for the CLI.
    """
    def __init__(
        self,
        message: str = "An unexpected error occurred",
        status_code: int = status.HTTP_500_INTERNAL_SERVER_ERROR,
        details: Optional[Dict[str, Any]] = None,
        exit_code: int = 3
    ):
        self.message = message
        self.status_code = status_code
        self.details = details or {}
        self.exit_code = exit_code
        super().__init__(self.message)


class ValidationException(AppBaseException):
    """
    Exception raised for malformed input text or invalid arguments.
    """
    def __init__(
        self,
        message: str = "Validation error",
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(
            message=message,
            status_code=status.HTTP_400_BAD_REQUEST,
            details=details,
            exit_code=2
        )


class DomainException(AppBaseException):
    """
    Exception raised when a mathematical precondition does not hold.
    """
    def __init__(
        self,
        message: str = "Domain error",
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(
            message=message,
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            details=details,
            exit_code=3
        )


class ChargeException(DomainException):
    """
    Exception raised for charges outside an admissible window or with
    incompatible congruence classes.
    """
    def __init__(
        self,
        message: str = "Inadmissible charge",
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message=message, details=details)


class NotInCrystalException(DomainException):
    """
    Exception raised when a bipartition is not a vertex of the requested crystal.
    """
    def __init__(
        self,
        bipartition: Optional[str] = None,
        message: str = "Bipartition is not in the crystal",
        details: Optional[Dict[str, Any]] = None
    ):
        details = dict(details or {})
        if bipartition:
            details["bipartition"] = bipartition
            message = f"{bipartition}: {message[0].lower()}{message[1:]}"
        super().__init__(message=message, details=details)


class NonStandardSymbolException(DomainException):
    """
    Exception raised when the pairing map cannot be built on a symbol.
    """
    def __init__(
        self,
        message: str = "Symbol is not standard",
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message=message, details=details)


class NotInImageException(DomainException):
    """
    Exception raised when the inverse pairing fails, i.e. the bipartition is
    not in the image of the symbol map.
    """
    def __init__(
        self,
        message: str = "Bipartition is not in the image of the symbol map",
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message=message, details=details)


class HeckeParameterException(DomainException):
    """
    Exception raised when Hecke parameters do not determine a charge.
    """
    def __init__(
        self,
        reason: str,
        message: str = "Hecke parameters do not determine a charge",
        details: Optional[Dict[str, Any]] = None
    ):
        details = dict(details or {})
        details["reason"] = reason
        self.reason = reason
        super().__init__(message=message, details=details)


class PairLimitException(DomainException):
    """
    Exception raised when a symbol has too many pairs to enumerate subsets.
    """
    def __init__(
        self,
        pairs: int,
        limit: int,
        details: Optional[Dict[str, Any]] = None
    ):
        details = dict(details or {})
        details.update({"pairs": pairs, "limit": limit})
        super().__init__(
            message=f"Symbol has {pairs} pairs, more than the limit of {limit}",
            details=details
        )


class BudgetExceededException(DomainException):
    """
    Exception raised when a verification grid visits more bipartitions than allowed.
    """
    def __init__(
        self,
        budget: int,
        details: Optional[Dict[str, Any]] = None
    ):
        details = dict(details or {})
        details["budget"] = budget
        super().__init__(
            message=f"Verification budget of {budget} bipartition visits exhausted",
            details=details
        )


class CrystalInvariantException(AppBaseException):
    """
    Exception raised when an internal invariant of the crystal machinery breaks.
    """
    def __init__(
        self,
        message: str = "Internal invariant violated",
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(
            message=message,
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            details=details,
            exit_code=3
        )
