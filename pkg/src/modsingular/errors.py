class ModSingularError(ValueError):
    """Base class for all library errors."""


class NotPsd(ModSingularError):
    pass


class NotDefinite(ModSingularError):
    pass


class NotFullRank(ModSingularError):
    pass


class InvalidWeight(ModSingularError):
    pass


class NonIntegralCoordinate(ArithmeticError):
    """A representation matrix came out non-integral. Always a bug."""


class DependentColumns(ModSingularError):
    pass


class OutOfBound(ModSingularError):
    pass


class MissingCoefficient(ModSingularError):
    pass


class IncompatibleModulus(ModSingularError):
    pass


class NoWitness(ModSingularError):
    pass


class NoUnitCoordinate(ModSingularError):
    pass


class OddRank(ModSingularError):
    pass


class NotPluriharmonic(ModSingularError):
    pass


class NotEquivariant(ModSingularError):
    pass


class DegenerateR(ModSingularError):
    pass


class UnknownLattice(ModSingularError):
    pass


class SfexParseError(ModSingularError):
    pass
