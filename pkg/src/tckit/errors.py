class TckitError(Exception):
    """Base class for all errors raised by tckit."""


class SingularModel(TckitError):
    pass


class BadReduction(TckitError):
    pass


class CeilingExceeded(TckitError):
    """A prime or modulus is above a configured computation ceiling."""


class BudgetExceeded(TckitError):
    """A subgroup closure grew past the configured element budget."""


class SizeExceeded(TckitError):
    """A group is too large for full normal-subgroup enumeration."""


class NotSemistable(TckitError):
    pass


class CMCurveError(TckitError):
    """Raised when a pipeline step needs a non-CM assertion that is missing."""


class CorpusFormatError(TckitError):
    pass
