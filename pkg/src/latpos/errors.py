"""Exception hierarchy.

Every error carries a short machine-readable ``code`` that the CLI copies
into its JSON error object.
"""

from __future__ import annotations


class LatposError(Exception):
    code = "error"
    exit_code = 2

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NonInvertibleConstantTerm(LatposError, ValueError):
    code = "non_invertible_constant_term"


class IndexBeyondTruncation(LatposError, IndexError):
    code = "index_beyond_truncation"


class CapExceeded(LatposError, RuntimeError):
    code = "cap_exceeded"
    exit_code = 3


class NotSquare(LatposError, ValueError):
    code = "not_square"


class OutOfBounds(LatposError, IndexError):
    code = "out_of_bounds"


class OutOfWindow(LatposError, IndexError):
    code = "out_of_window"


class BadParameters(LatposError, ValueError):
    code = "bad_parameters"


class BadWeight(LatposError, ValueError):
    """A weight polynomial has a negative coefficient."""

    code = "bad_weight"


class CycleDetected(LatposError, ValueError):
    code = "cycle_detected"


class MissingFactorForm(LatposError, ValueError):
    code = "missing_factor_form"


class SymbolicTermsUnsupported(LatposError, TypeError):
    code = "symbolic_terms_unsupported"


class HypothesisNotMet(LatposError, ValueError):
    code = "hypothesis_not_met"


class UnknownName(LatposError, KeyError):
    code = "unknown_name"

    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class SizeGuardExceeded(LatposError, ValueError):
    code = "size_guard"
    exit_code = 3
