"""Exception types shared across the package."""


class MinifpError(Exception):
    """Base class for all errors raised by this package."""


class OutOfRange(MinifpError):
    """A parameter lies outside its documented bounds."""


class FormatMismatch(MinifpError):
    """Operands of an arithmetic operation carry different formats."""


class InvalidConversion(MinifpError):
    """Conversion requested for a value that has no representation."""


class RegionImbalance(MinifpError):
    """Region enter/exit calls are unbalanced or nested."""


class MixedVectorRegion(MinifpError):
    """A vectorizable region saw arithmetic in more than one format."""


class LengthMismatch(MinifpError):
    """Two output sequences of different lengths were compared."""


class Infeasible(MinifpError):
    """No precision assignment satisfies the quality threshold."""


class MissingTableEntry(MinifpError):
    """A cost table lacks an entry for an event present in the stats."""


class DivisionByZeroBaseline(MinifpError):
    """Normalization requested against a baseline with a zero total."""


class UnknownKernel(MinifpError):
    """No benchmark kernel is registered under the requested name."""


class ConfigError(MinifpError):
    """A kernel configuration does not bind the kernel's variables."""
