"""Exception types raised by mbsmooth.

Every error derives from :class:`MBSmoothError`, which is also a
``ValueError`` so callers that only care about bad input can catch that.
"""


class MBSmoothError(ValueError):
    pass


class MixedArity(MBSmoothError):
    pass


class EmptyBase(MBSmoothError):
    pass


class MixedKind(MBSmoothError):
    pass


class NegativeCount(MBSmoothError):
    pass


class EmptyDistribution(MBSmoothError):
    pass


class NumericFeature(MBSmoothError):
    pass


class NegativeWeight(MBSmoothError):
    pass


class KindMismatch(MBSmoothError):
    pass


class DimensionMismatch(MBSmoothError):
    pass


class ArityTooLarge(MBSmoothError):
    pass


class InvalidLambdas(MBSmoothError):
    pass


class RaggedRow(MBSmoothError):
    def __init__(self, line_number, expected, got, path=None):
        self.line_number = line_number
        self.expected = expected
        self.got = got
        self.path = path
        where = f"{path}:" if path else "line "
        super().__init__(
            f"ragged row at {where}{line_number}: expected {expected} tokens, got {got}"
        )


class EmptyFile(MBSmoothError):
    pass


class ParseError(MBSmoothError):
    pass


class MissingToken(MBSmoothError):
    def __init__(self, token):
        self.token = token
        super().__init__(f"token not in vector lexicon: {token!r}")


class InvalidTemplate(MBSmoothError):
    pass


class TooFewCases(MBSmoothError):
    pass


class LengthMismatch(MBSmoothError):
    pass


class DegenerateVariance(MBSmoothError):
    pass
