"""Exception hierarchy.

Errors fall into two families that the command line maps to distinct exit
codes: bad input (malformed files, invalid grids or orders) and violated
mathematical hypotheses (inadmissible wavelets, degenerate wavelet pairs,
non-compact wavelets where compact support is required).
"""


class FrwtError(Exception):
    """Base class for all package errors."""


class InputError(FrwtError, ValueError):
    """Invalid user input; the CLI exits with status 2."""


class HypothesisError(FrwtError, ValueError):
    """A mathematical precondition fails; the CLI exits with status 3."""


class InvalidGridError(InputError):
    pass


class GridMismatchError(InputError):
    pass


class InvalidOrderError(InputError):
    """Fractional order outside (0, 1]."""


class OrderMismatchError(InputError):
    pass


class ZeroScaleError(InputError):
    pass


class CatalogError(InputError):
    pass


class FormatError(InputError):
    """Malformed CSV/JSON input."""


class InvalidMollifierError(InputError):
    pass


class NotAWaveletError(HypothesisError):
    """Signal is zero or its admissibility integral diverges."""


class DegeneratePairError(HypothesisError):
    """Cross-admissibility constant vanishes where it must not."""


class HypothesisViolationError(HypothesisError):
    """E.g. a non-compactly supported wavelet passed to a Morrey estimate."""
