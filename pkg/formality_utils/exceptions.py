"""
Global Formality-Utils exception classes.
"""


class FormalityError(Exception):
    """
    Base class of every error raised by Formality-Utils.
    """


class ImproperlyConfigured(FormalityError):
    """
    Formality-Utils is improperly configured; normally due to an invalid
    environment variable or a missing optional library.
    """


class ContractViolation(FormalityError, ValueError):
    """
    An operation was called with arguments outside its contract, for example
    mismatched dimensions, a wrong degree shift or an arity out of range.
    """


class ParseError(FormalityError):
    """
    An algebra description file could not be parsed.

    :param message: what went wrong
    :param lineno: 1-based line number of the offending line, if known
    """
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f'line {lineno}: {message}'
        super().__init__(message)


class ValidationError(FormalityError):
    """
    Input failed an axiom check. The full
    :class:`~formality_utils.pdgca.ValidationReport` is available as
    ``report``.
    """
    def __init__(self, report, message=None):
        self.report = report
        if message is None:
            message = f'{len(report)} violation(s): {report}'
        super().__init__(message)


class InvalidAlgebra(ValidationError):
    pass


class InvalidHodgeHomotopy(ValidationError):
    pass


class InvalidCochain(ValidationError):
    pass


class NotConnected(FormalityError):
    """
    The degree zero cohomology is not one dimensional.
    """


class MetricError(FormalityError):
    pass


class MetricNotPositiveDefinite(MetricError):
    pass


class MetricIncompatible(MetricError):
    """
    The Hodge homotopy induced by a metric violates the orthogonality
    relations with respect to the Poincare pairing.
    """
    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class NotAnIsomorphism(ContractViolation):
    pass


class MismatchedInputs(ContractViolation):
    pass


class NotApplicable(FormalityError):
    """
    The hypotheses of a theorem do not hold for the given algebra, so no
    certificate can be issued. ``hypotheses`` lists every evaluated check.
    """
    def __init__(self, message, hypotheses=()):
        self.hypotheses = list(hypotheses)
        super().__init__(message)
