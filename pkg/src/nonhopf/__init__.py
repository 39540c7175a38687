"""Two-bridge relator words, CS-sequence calculus, small-cancellation checks
and a replayable certificate for a non-Hopfian two-generator group."""

__version__ = "0.1.0"

from .slopes import ContinuedFraction, Slope, cf_to_slope, family_slope, slope_to_cf  # noqa: E402
from .words import CyclicWord, Endomorphism, cs_seq, relator, s_seq  # noqa: E402

__all__ = [
    "ContinuedFraction",
    "CyclicWord",
    "Endomorphism",
    "Slope",
    "__version__",
    "cf_to_slope",
    "cs_seq",
    "family_slope",
    "relator",
    "s_seq",
    "slope_to_cf",
]
