"""Exception hierarchy.

Everything raised for a mathematical reason derives from :class:`DomainError`;
the CLI maps those to exit status 2.  Unknown tokens (series names, families,
cases) derive from :class:`UnknownToken` and count as usage errors.
"""

from __future__ import annotations


class DomainError(ValueError):
    """Base class for failures of a mathematical precondition."""

    location: tuple[int, ...] | None = None


class ZeroConstantTerm(DomainError):
    pass


class OrderMismatch(DomainError):
    pass


class ZeroDivisor(DomainError):
    pass


class InnerOrderZero(DomainError):
    pass


class NotInvertible(DomainError):
    pass


class NonzeroConstantTerm(DomainError):
    pass


class InsufficientTruncation(DomainError):
    pass


class NotProper(DomainError):
    pass


class LengthMismatch(DomainError):
    pass


class ZeroParameter(DomainError):
    pass


class IdentityViolation(DomainError):
    """Two routes that must agree produced different results."""


class NotHadamardUnit(DomainError):
    def __init__(self, index: int, message: str | None = None):
        self.index = index
        self.location = (index,)
        super().__init__(message or f"coefficient {index} is zero, not a Hadamard unit")


class ZeroDiagonal(DomainError):
    def __init__(self, n: int):
        self.n = n
        self.location = (n, n)
        super().__init__(f"diagonal entry ({n},{n}) is zero")


class NotRiordan(DomainError):
    def __init__(self, n: int, j: int, expected=None, found=None):
        self.n, self.j = n, j
        self.location = (n, j)
        msg = f"entry ({n},{j}) is not consistent with a Riordan array"
        if expected is not None:
            msg += f": recurrence gives {expected}, triangle has {found}"
        super().__init__(msg)


class UnknownToken(LookupError):
    pass


class UnknownName(UnknownToken):
    pass


class UnknownFamily(UnknownToken):
    pass


class UnknownCase(UnknownToken):
    pass
