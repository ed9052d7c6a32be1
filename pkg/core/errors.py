"""
Exception hierarchy for the quandle cohomology toolkit.

Every failure raised by the library derives from CohomologyError so callers
(the CLI in particular) can separate user input problems from bugs.
"""


class CohomologyError(Exception):
    """Base class for all library errors"""


# gf

class FieldError(CohomologyError):
    """Finite field construction or arithmetic failure"""


class NotPrime(FieldError):
    def __init__(self, p: int):
        super().__init__(f"{p} is not prime")
        self.p = p


class Reducible(FieldError):
    def __init__(self, modulus):
        super().__init__(f"modulus {list(modulus)} is reducible")
        self.modulus = tuple(modulus)


class DegreeZero(FieldError):
    def __init__(self):
        super().__init__("modulus must have degree at least 1")


class NotMonic(FieldError):
    def __init__(self, modulus):
        super().__init__(f"modulus {list(modulus)} is not monic")
        self.modulus = tuple(modulus)


class DivisionByZero(FieldError, ZeroDivisionError):
    def __init__(self):
        super().__init__("division by zero in finite field")


class SpecMismatch(FieldError):
    def __init__(self, left, right):
        super().__init__(f"operands live in different fields: {left} vs {right}")


class ZeroElement(FieldError):
    def __init__(self):
        super().__init__("zero has no multiplicative order")


class InvalidOmega(FieldError):
    def __init__(self, text: str):
        super().__init__(f"omega must be neither 0 nor 1 (got {text})")


class ElementParseError(FieldError):
    def __init__(self, text: str, reason: str = ""):
        msg = f"cannot parse field element {text!r}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


# polyring

class PolynomialError(CohomologyError):
    """Polynomial arithmetic failure"""


class ArityMismatch(PolynomialError):
    def __init__(self, left: int, right: int):
        super().__init__(f"arity mismatch: {left} vs {right}")


# complex

class ComplexError(CohomologyError):
    """Cochain complex failure"""


class NotInComplex(ComplexError):
    def __init__(self, what: str):
        super().__init__(f"not an element of the cochain complex: {what}")


class NotInFiltration(ComplexError):
    def __init__(self, s: int, exponent: int):
        super().__init__(f"last-variable exponent {exponent} is not a multiple of p^{s}")


class BadFiltration(ComplexError):
    def __init__(self, s: int, q: int):
        super().__init__(f"filtration level {s} requires p^s < q = {q}")


# cocycles

class CocycleError(CohomologyError):
    """Cocycle family construction failure"""


class OmegaPrefixViolation(CocycleError):
    def __init__(self, family: str, params):
        super().__init__(f"{family}{tuple(params)} is not divisible by U1...U(n-1)")


class NotDivisibleByP(CocycleError):
    def __init__(self, family: str, value: int, p: int):
        super().__init__(f"{family}: parameter {value} is not divisible by p = {p}")


class NotPowerOfP(CocycleError):
    def __init__(self, value: int, p: int):
        super().__init__(f"{value} is not a power of p = {p}")


class AdmissibilityViolation(CocycleError):
    def __init__(self, spec, reason: str):
        super().__init__(f"{spec} is not admissible: {reason}")


class SpecParseError(CocycleError):
    def __init__(self, text: str, reason: str = ""):
        msg = f"cannot parse cocycle spec {text!r}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


# linalg

class LinalgError(CohomologyError):
    """Exact linear algebra failure"""


class InconsistentSpan(LinalgError):
    def __init__(self, detail: str = ""):
        msg = "coboundary column outside the cocycle span"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


# oracle

class OracleError(CohomologyError):
    """Brute-force function complex failure"""


class AxiomViolation(OracleError):
    def __init__(self, axiom: str, witness):
        super().__init__(f"quandle axiom '{axiom}' fails at {witness}")


class DegreeUnsupported(OracleError):
    def __init__(self, n: int, allowed):
        super().__init__(f"degree {n} not supported here (allowed: {sorted(allowed)})")
