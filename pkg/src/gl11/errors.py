"""Exception hierarchy shared by all gl11 modules."""


class Gl11Error(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(Gl11Error, ZeroDivisionError):
    pass


class OrderMismatch(Gl11Error, ValueError):
    pass


class NotSymmetric(Gl11Error, ValueError):
    pass


class DenominatorVanishes(Gl11Error, ZeroDivisionError):
    pass


class ParseError(Gl11Error, ValueError):
    pass


class ValidationError(Gl11Error, ValueError):
    pass


class OddCrossingParity(Gl11Error, ValueError):
    pass


class IndexOutOfRange(Gl11Error, IndexError):
    pass


class InternalExactnessFailure(Gl11Error, ArithmeticError):
    """An exact division or normalization that must succeed did not."""


class SignUndetermined(Gl11Error, ArithmeticError):
    """Every component deletion made the Torres substitution vanish."""


class AsymmetricInput(Gl11Error, ArithmeticError):
    """No symmetrizing monomial exists for an Alexander representative."""


class UnsupportedWeight(Gl11Error, ValueError):
    pass


class NotComputable(Gl11Error, ValueError):
    """Some meridian image is the identity of the palette group."""


class InfiniteH1(Gl11Error, ValueError):
    pass


class C1Mismatch(Gl11Error, ArithmeticError):
    pass


class InvalidLensSpec(Gl11Error, ValueError):
    pass


class SurgeryClosedMismatch(Gl11Error, ArithmeticError):
    pass


class BadIndexSet(Gl11Error, ValueError):
    pass
