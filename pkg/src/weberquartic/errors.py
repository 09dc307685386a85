"""Exception hierarchy shared by the library and the CLI."""


class WeberQuarticError(Exception):
    """Base class; ``code`` is the machine-readable tag used by the CLI."""

    code = "error"


class GenusMismatch(WeberQuarticError, ValueError):
    code = "genus_mismatch"


class InvalidCharacteristic(WeberQuarticError, ValueError):
    code = "invalid_characteristic"


class NotFound(WeberQuarticError, LookupError):
    code = "not_found"


class NotSymmetric(WeberQuarticError, ValueError):
    code = "not_symmetric"


class NotPositiveDefinite(WeberQuarticError, ValueError):
    code = "not_positive_definite"


class NotSymplectic(WeberQuarticError, ValueError):
    code = "not_symplectic"


class SingularAction(WeberQuarticError, ArithmeticError):
    code = "singular_action"


class RadiusOverflow(WeberQuarticError, ArithmeticError):
    code = "radius_overflow"


class HyperellipticOrDegenerate(WeberQuarticError, ArithmeticError):
    code = "hyperelliptic_or_degenerate"


class ZeroGradient(WeberQuarticError, ArithmeticError):
    code = "zero_gradient"


class DegenerateDenominator(WeberQuarticError, ArithmeticError):
    code = "degenerate_denominator"


class FormatError(WeberQuarticError, ValueError):
    code = "malformed_input"
