"""Exception hierarchy shared by every module."""


class Rank1Error(Exception):
    """Base class for all errors raised by this package."""


class InvalidSpec(Rank1Error, ValueError):
    """A parameter spec violates ``r >= 2`` or ``len(s) == r - 1``, or fails to parse."""

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class DepthLimited(Rank1Error):
    """A query needs stages beyond what a tail-less spec provides."""


class CapExceeded(Rank1Error):
    """Materializing a word would exceed the configured letter cap."""


class CertificateFailed(Rank1Error):
    """An incompatibility or occurrence certificate that had to hold did not."""


class DegenerateSpec(Rank1Error):
    """The rank-one word looks simply built from a shorter word at the analysed depth."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotCanonicalAtDepth(Rank1Error):
    """The given generating sequence has a removable stage at the analysed depth."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class OutOfWindow(Rank1Error):
    """A pointed configuration was queried outside the part of the point it determines."""


class SchemeInvalid(Rank1Error):
    """A proposed replacement scheme does not preserve expected-occurrence positions."""
