"""Exception hierarchy shared by every fplab module."""


class FplabError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(FplabError):
    """The requested modulus is not an odd prime."""


class TooLarge(FplabError):
    """The modulus exceeds the configured table-memory bound."""


class TrivialCharacter(FplabError):
    """Character exponent is congruent to 0 mod p-1."""


class FieldMismatch(FplabError):
    """Operands live over different prime fields."""


class EmptySet(FplabError):
    """An operation that needs a nonempty set received an empty one."""


class ZeroDilation(FplabError):
    """Dilation coefficient is 0 mod p."""


class UnboundVariable(FplabError):
    """A set expression references a name missing from the environment."""


class NotInterval(FplabError):
    """The given set is not a (cyclic) run of consecutive residues."""


class MissingParam(FplabError):
    """A bound formula needs a parameter the caller did not supply."""


class ZeroInA(FplabError):
    """count_system requires 0 to be excluded from its first argument."""


class TooSmall(FplabError):
    """The input set is below the minimum size for this check."""


class BadParams(FplabError):
    """Structure-extraction parameters out of range (d < 2 or l < 1)."""


class BadFamily(FplabError):
    """Set-family specification is malformed or infeasible at this p."""


class BadConfig(FplabError):
    """Sweep configuration file is malformed."""


class SpectralMismatch(FplabError):
    """A spectral value failed the within-0.5 rounding contract for an exact count."""


class FormatError(FplabError):
    """A set / point / plane file violates the documented format."""
