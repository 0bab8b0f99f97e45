"""Exception hierarchy shared by all latrepr modules."""


class LatticeError(Exception):
    """Base class for every error raised by latrepr."""


class IndexOutOfRange(LatticeError):
    pass


class CycleDetected(LatticeError):
    def __init__(self, a, b):
        super().__init__(f"order is not antisymmetric: {a} <= {b} <= {a}")
        self.pair = (a, b)


class NotALattice(LatticeError):
    def __init__(self, a, b, missing):
        super().__init__(f"elements {a} and {b} have no {missing}")
        self.pair = (a, b)
        self.missing = missing


class EmptyFactorList(LatticeError):
    pass


class NotDistributive(LatticeError):
    def __init__(self, triple):
        super().__init__(f"distributivity fails at {triple}")
        self.triple = triple


class NotRepresentable(NotDistributive):
    pass


class NotPrime(LatticeError):
    def __init__(self, index=None, message="set is not a prime filter"):
        super().__init__(message if index is None else f"{message} (index {index})")
        self.index = index


class NotDistinguishing(LatticeError):
    def __init__(self, pair):
        super().__init__(f"no member separates the pair {pair}")
        self.pair = pair


class NotBoolean(LatticeError):
    pass


class CarrierTooLarge(LatticeError):
    pass


class MalformedInterval(LatticeError):
    pass


class BudgetExhausted(LatticeError):
    pass


class UnknownFamily(LatticeError):
    pass


class ParseError(LatticeError):
    pass
