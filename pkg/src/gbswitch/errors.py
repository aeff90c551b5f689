"""Exception types shared across the package."""


class LengthMismatch(ValueError):
    """Entry buffer length does not match the declared dimensions."""


class NonUnimodularEntry(ValueError):
    """Tensor entry outside {+1, -1}."""


class SizeOverflow(ValueError):
    """Requested tensor exceeds the hard n**m construction guard."""


class DimMismatch(ValueError):
    """Operands declare incompatible dimensions."""


class AxisOutOfRange(IndexError):
    """Axis index outside 0..m-1."""


class InvalidExponent(ValueError):
    """Exponent outside the domain of the requested formula."""


class BudgetExceeded(RuntimeError):
    """Exact enumeration refused: instance larger than the evaluation budget."""


class DegenerateInput(ValueError):
    """Input carries no usable signal (e.g. a single distinct abscissa)."""
