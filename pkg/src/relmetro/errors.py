"""Exception types raised by relmetro."""


class RelMetroError(ValueError):
    """Base class for all library errors."""


class NonHermitianInput(RelMetroError):
    pass


class NegativeEigenvalue(RelMetroError):
    pass


class InvalidState(RelMetroError):
    """Input is not a valid density matrix."""


class ParamOutOfRange(RelMetroError):
    pass


class NonPositiveInput(RelMetroError):
    pass


class SingularMarginal(RelMetroError):
    """Alice's reduced state is (numerically) pure."""


class ZeroProbability(RelMetroError):
    pass


class NonOrthonormalBasis(RelMetroError):
    pass


class DegenerateSupport(RelMetroError):
    pass


class SingularBlock(RelMetroError):
    pass


class SingularTheta(RelMetroError):
    pass


class NoOptimum(RelMetroError):
    pass


class NonHermitianObservable(RelMetroError):
    pass


class ZeroNormalization(RelMetroError):
    pass


class DegenerateMarginal(RelMetroError):
    pass
