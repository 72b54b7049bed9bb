"""Exception hierarchy.

Precision problems and hypothesis-certificate problems are separated so the
CLI can map them to distinct exit codes.
"""


class AkashiError(Exception):
    pass


class PrecisionError(AkashiError):
    """Answer cannot be certified at the working precision."""


class CertificateError(AkashiError):
    """A structural hypothesis (torsion, exactness, compatibility) failed."""


class PrecisionMismatch(AkashiError):
    pass


class NotAUnit(AkashiError):
    pass


class IndistinguishableFromZero(PrecisionError):
    pass


class TruncationTooSmall(PrecisionError):
    pass


class LeadingTermBelowPrecision(PrecisionError):
    pass


class PrecisionInsufficient(PrecisionError):
    pass


class TruncationNotStable(PrecisionError):
    pass


class ValuationAtPrecisionCap(PrecisionError):
    pass


class NotTorsionAtPrecision(CertificateError):
    pass


class NonIntegralAkashi(CertificateError):
    def __init__(self, message, numerator=None, denominator=None):
        super().__init__(message)
        self.numerator = numerator
        self.denominator = denominator


class NotExact(CertificateError):
    pass


class ActionMismatch(CertificateError):
    pass


class BadReduction(AkashiError):
    pass


class PrimeTooLarge(AkashiError):
    pass


class PlaceDividesP(AkashiError):
    pass


class SizeBound(AkashiError):
    pass
