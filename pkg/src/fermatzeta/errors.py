"""Exception types raised across the package."""


class ZetaError(Exception):
    """Base class for all package errors."""


class NotPrime(ZetaError, ValueError):
    def __init__(self, p):
        super().__init__(f"{p} is not prime")
        self.p = p


class FieldTooLarge(ZetaError, ValueError):
    def __init__(self, q, limit):
        super().__init__(f"field size {q} exceeds the discrete-log table bound {limit}")
        self.q = q
        self.limit = limit


class ContextMismatch(ZetaError, ValueError):
    pass


class DivisionByZero(ZetaError, ZeroDivisionError):
    pass


class DlogOfZero(ZetaError, ValueError):
    pass


class BadCongruence(ZetaError, ValueError):
    def __init__(self, q, m):
        super().__init__(f"q = {q} is not 1 mod m = {m}")
        self.q = q
        self.m = m


class ZeroCoefficient(ZetaError, ValueError):
    def __init__(self, i):
        super().__init__(f"coefficient c_{i} is zero")
        self.i = i


class EnumerationCapExceeded(ZetaError, RuntimeError):
    def __init__(self, estimate, cap):
        super().__init__(f"enumeration needs {estimate} points, cap is {cap}")
        self.estimate = estimate
        self.cap = cap


class ResidualTooLarge(ZetaError, ArithmeticError):
    def __init__(self, what, residual, tol):
        super().__init__(f"{what}: rounding residual {residual:.3g} exceeds {tol:.3g}")
        self.residual = residual
        self.tol = tol


class NonIntegralOrbitCount(ZetaError, ArithmeticError):
    def __init__(self, d, value):
        super().__init__(f"orbit count b_{d} = {value} is not an integer")
        self.d = d
        self.value = value


class NegativeOrbitCount(ZetaError, ArithmeticError):
    def __init__(self, d, value):
        super().__init__(f"orbit count b_{d} = {value} is negative")
        self.d = d
        self.value = value


class DimensionMismatch(ZetaError, ValueError):
    pass


class BadTuple(ZetaError, ValueError):
    pass


class AncillaTooLarge(ZetaError, ValueError):
    pass


class StateTooLarge(ZetaError, MemoryError):
    def __init__(self, size, limit):
        super().__init__(f"state needs {size} amplitudes, limit is {limit}")
        self.size = size
        self.limit = limit


class PolyParseError(ZetaError, ValueError):
    def __init__(self, msg, line, col):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col
