"""Exception hierarchy shared by the evaluators and verifiers."""


class QSeriesError(Exception):
    """Base class for every error raised by qgosper."""


class PoleError(QSeriesError):
    """A parameter sits on (or within tolerance of) a pole of the formula."""


class MaxTermsExceeded(QSeriesError):
    """A product or series needed more factors/terms than ``max_terms``."""


class DivergenceGuard(QSeriesError):
    """Direct summation refused because the argument is outside ``radius_guard``."""


class NotEvaluable(QSeriesError):
    """No available summation route covers the requested argument."""


class NoConvergence(QSeriesError):
    """Root iteration failed to settle; ``residuals`` holds the best attempt."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals or []


class AssumptionError(QSeriesError, ValueError):
    """Input parameters violate a stated assumption.

    ``violations`` is a list of human readable strings, one per violated
    condition (e.g. ``"c within 1e-16 of q^2"``).
    """

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
