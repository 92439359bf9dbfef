"""Exception types shared across the package."""


class SpaceError(Exception):
    """Base class for all finconv errors."""


class CenteringViolation(SpaceError):
    def __init__(self, point):
        self.point = point
        super().__init__(f"point filter of {point!r} does not converge to {point!r}")


class UnknownPoint(SpaceError):
    def __init__(self, point):
        self.point = point
        super().__init__(f"point {point!r} is not in the carrier")


class UnknownFilter(SpaceError):
    def __init__(self, generator):
        self.generator = generator
        super().__init__(f"no limit entry for generator {sorted(map(repr, generator))}")


class MalformedEdge(SpaceError):
    pass


class EmptyHyperedge(SpaceError):
    pass


class AsymmetricMatrix(SpaceError):
    pass


class NegativeDistance(SpaceError):
    pass


class NotATopology(SpaceError):
    def __init__(self, witness, reason):
        self.witness = witness
        self.reason = reason
        super().__init__(f"not a topology: {reason} (witness {witness})")


class ParseError(SpaceError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = ""
        if line is not None:
            where += f" at line {line}"
        if field is not None:
            where += f" in field {field!r}"
        super().__init__(message + where)


class KindMismatch(SpaceError):
    pass


class NotAPartition(SpaceError):
    pass


class ExponentialTooLarge(SpaceError):
    def __init__(self, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(f"function space would have {size} candidate maps (cap {cap})")


class NotContinuous(SpaceError):
    pass


class DomainMismatch(SpaceError):
    pass


class EndMismatch(SpaceError):
    pass


class NotEmbedding(SpaceError):
    pass


class SearchSpaceTooLarge(SpaceError):
    def __init__(self, budget):
        self.budget = budget
        super().__init__(f"search exceeded the node budget of {budget}")


class IncompatibleData(SpaceError):
    pass


class NotACoveringSystem(SpaceError):
    pass


class NotALoop(SpaceError):
    pass


class BudgetExhausted(SpaceError):
    pass


class NotContinuousAttachment(SpaceError):
    pass
