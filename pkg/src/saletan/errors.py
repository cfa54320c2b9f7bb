"""Exception hierarchy shared by all modules."""


class SaletanError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(SaletanError):
    pass


class ArityMismatch(SaletanError):
    pass


class IndexOutOfRange(SaletanError):
    pass


class NoSolution(SaletanError):
    pass


class NotUnique(SaletanError):
    pass


class UnknownName(SaletanError):
    pass


class NotInvolutive(SaletanError):
    pass


class NotComplementary(SaletanError):
    pass


class NotAssociative(SaletanError):
    pass


class NoInvertibleCombination(SaletanError):
    pass


class Degenerate(NoInvertibleCombination):
    """det(A + t N) vanishes identically in t."""


class ConditionFails(SaletanError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class StrongSaletanFails(SaletanError):
    def __init__(self, message, k=None):
        super().__init__(message)
        self.k = k


class SingularAtLambda(SaletanError):
    def __init__(self, message, lam=None):
        super().__init__(message)
        self.lam = lam


class Diverging(SaletanError):
    pass


class NotContractible(SaletanError):
    pass


class ParseError(SaletanError):
    def __init__(self, message, field=None):
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)
        self.field = field


class AxiomViolation(SaletanError):
    def __init__(self, message, axiom=None, witness=None):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness
