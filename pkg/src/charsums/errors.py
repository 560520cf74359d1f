"""Exception types shared across the package."""


class CharsumsError(ValueError):
    """Base class for all domain errors raised by this package."""


class AdmissibilityError(CharsumsError):
    """Character data violates a well-definedness condition.

    Either the weighted numerator sum is not divisible by q-1 (the product
    of the characters raised to the form degrees must be trivial), or some
    character is trivial where a nontrivial one is required.
    """


class ModulusMismatchError(CharsumsError):
    """Operands live in cyclotomic rings with different root orders."""


class InexactDivisionError(CharsumsError):
    """A polynomial or integer division that must be exact left a remainder."""


class PrecisionExhaustedError(CharsumsError):
    """A p-adic quantity is indistinguishable from zero at working precision."""


class OversizedFieldError(CharsumsError):
    """Field too large for table-based arithmetic / discrete-log lookup."""


class BudgetExceededError(CharsumsError):
    """Point-enumeration budget exceeded before any sum could be computed."""


class NotPrimeError(CharsumsError):
    """A claimed prime fails trial division."""
