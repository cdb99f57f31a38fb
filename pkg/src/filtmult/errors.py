"""Exception hierarchy shared by all engine modules."""

from __future__ import annotations


class FiltmultError(Exception):
    """Base class for all engine errors.

    Every subclass has a stable ``code`` used in machine-readable reports.
    """

    code = "EngineError"


class DimensionMismatch(FiltmultError):
    code = "DimensionMismatch"


class ArityMismatch(FiltmultError):
    code = "ArityMismatch"


class NotMPrimary(FiltmultError):
    """The staircase complement is infinite, so colength is undefined."""

    code = "NotMPrimary"


class DimensionUnsupported(FiltmultError):
    """Exact polyhedral geometry is only implemented for ambient dimension <= 3."""

    code = "DimensionUnsupported"


class BudgetExceeded(FiltmultError):
    code = "BudgetExceeded"


class NotNoetherian(FiltmultError):
    """No power-stability scale was detected, so the exact strategy cannot run."""

    code = "NotNoetherian"


class IndexOutOfTable(FiltmultError):
    code = "IndexOutOfTable"


class DegreeMismatch(FiltmultError):
    """An interpolated Hilbert function does not have the expected total degree."""

    code = "DegreeMismatch"


class TopCoefficientDrift(FiltmultError):
    """Top-degree coefficients differ across residue classes of a quasi-polynomial."""

    code = "TopCoefficientDrift"


class ExhaustedRetries(FiltmultError):
    code = "ExhaustedRetries"


class SpecValidationError(FiltmultError):
    """A problem description failed validation before dispatch."""

    code = "SpecValidationError"
