"""Exception hierarchy shared by every knotua module."""


class KnotUAError(Exception):
    """Base class for all errors raised by knotua."""


class ParseError(KnotUAError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotNormalizable(KnotUAError, ValueError):
    pass


class ZeroEvaluationPoint(KnotUAError, ZeroDivisionError):
    pass


class NonSquare(KnotUAError, ValueError):
    pass


class SingularMatrix(KnotUAError, ValueError):
    pass


class NonUnitTransform(KnotUAError, ValueError):
    pass


class BadMinorSize(KnotUAError, ValueError):
    pass


class DimensionMismatch(KnotUAError, ValueError):
    pass


class NotPrime(KnotUAError, ValueError):
    pass


class NotSeifert(KnotUAError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OmegaAtAlexanderRoot(KnotUAError, ArithmeticError):
    pass


class ConventionSelfCheckFailed(KnotUAError, AssertionError):
    pass


class NotHermitian(KnotUAError, ValueError):
    pass


class NotSymmetric(KnotUAError, ValueError):
    pass


class NotUnimodular(KnotUAError, ValueError):
    pass


class NotDiagonalized(KnotUAError, ValueError):
    pass


class CertificateError(KnotUAError):
    """A certificate failed one of the verification checks."""

    check = "certificate"


class HermitianFail(CertificateError):
    check = "hermitian"


class DeterminantFail(CertificateError):
    check = "determinant"


class WitnessNotWellDefined(CertificateError):
    check = "witness"


class PairingMismatch(CertificateError):
    check = "pairing"


class SurjectivityProxyFail(CertificateError):
    check = "surjectivity"


class A1NotDiagonalizable(CertificateError):
    check = "diagonalizable"
