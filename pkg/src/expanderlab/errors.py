"""Exception taxonomy shared by every module in the package."""


class ExpanderLabError(Exception):
    """Base class for all errors raised by this library."""


class CompositeModulusError(ExpanderLabError):
    """Modulus is not prime."""


class EvenModulusError(ExpanderLabError):
    """Modulus is 2; the algebra here divides by 2, so p must be odd."""


class ModulusTooLargeError(ExpanderLabError):
    """Modulus above 2**61 - 1; products would leave the 128-bit comfort zone."""


class SpecSyntaxError(ExpanderLabError):
    """Descriptor string does not match the documented grammar."""


class ElementOutOfRangeError(ExpanderLabError):
    """Explicit list element outside [0, p)."""


class SizeExceedsFieldError(ExpanderLabError):
    """Requested set size larger than the field."""


class FieldMismatchError(ExpanderLabError):
    """Operands live in different prime fields."""


class UniverseTooLargeError(ExpanderLabError):
    """Exact subset enumeration requested over a universe with > 20 elements."""


class BudgetExceededError(ExpanderLabError):
    """Enumeration would exceed the stated evaluation budget."""


class NonDegenerateRequiredError(ExpanderLabError):
    """Operation is only meaningful for non-degenerate polynomials."""


class FormRequiredError(ExpanderLabError):
    """Operation requires a polynomial not of split form g(h(x)+k(y)+l(z))."""


class GeneratorNotUnitError(ExpanderLabError):
    """Geometric progression generator is 0 mod p."""


class ProgressionCollisionError(ExpanderLabError):
    """Progression revisits an element before reaching the requested size."""


class SizeAboveSqrtPError(ExpanderLabError):
    """Sweep size violates the |A| <= sqrt(p) cap requested for this run."""
