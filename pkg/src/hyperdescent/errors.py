"""Exception hierarchy.

Two families matter to callers: :class:`HypothesisViolation` means the input
does not satisfy the conditions the descent needs (fix the input, usually by
enlarging ``S``), while :class:`InvariantFailure` means an exact identity that
must hold did not, i.e. a bug or tampered data.
"""


class DescentError(Exception):
    """Base class for every error raised by this package."""


class HypothesisViolation(DescentError):
    pass


class InvariantFailure(DescentError):
    pass


class ZeroInput(DescentError, ValueError):
    pass


class FieldMismatch(DescentError, ValueError):
    pass


class OddValuationOutsideS(HypothesisViolation):
    def __init__(self, p):
        self.p = p
        super().__init__(f"odd valuation at prime {p} outside S")


class NotAnSUnit(HypothesisViolation):
    pass


class DiscriminantTooLarge(DescentError):
    pass


class MembershipNotFound(InvariantFailure):
    def __init__(self, m):
        self.m = m
        super().__init__(f"no power x^m with m <= {m} lies in the S-unit basis")


class NotMonic(HypothesisViolation):
    pass


class DegreeTooSmall(HypothesisViolation):
    pass


class DiscriminantZero(HypothesisViolation):
    pass


class DiscriminantNotSUnit(HypothesisViolation):
    def __init__(self, p):
        self.p = p
        super().__init__(f"discriminant is divisible by {p}, which is not in S")


class FewerThanThreeRationalRoots(HypothesisViolation):
    pass


class WeierstrassPoint(DescentError):
    pass


class NotOnCurve(HypothesisViolation):
    pass


class InconsistentData(InvariantFailure):
    pass


class FactorDegreeUnsupported(HypothesisViolation):
    pass


class FactorsNotCoprime(HypothesisViolation):
    pass


class TotalDegreeTooSmall(HypothesisViolation):
    pass


class ParseError(HypothesisViolation):
    """Malformed run configuration; ``line`` and ``field`` locate the problem."""

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


ConfigError = ParseError


class UnknownKey(ParseError):
    pass
