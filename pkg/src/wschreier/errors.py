"""Exception types.  Each carries the witnessing elements as attributes."""


class WSchreierError(Exception):
    """Base class for all domain errors raised by this package."""


class ShapeError(WSchreierError, ValueError):
    pass


class AssociativityViolation(WSchreierError):
    def __init__(self, a, b, c):
        self.a, self.b, self.c = a, b, c
        super().__init__(f"(a*b)*c != a*(b*c) at a={a}, b={b}, c={c}")


class IdentityViolation(WSchreierError):
    def __init__(self, a):
        self.a = a
        super().__init__(f"element 0 is not a two-sided identity (fails at {a})")


class IdentityNotPreserved(WSchreierError):
    def __init__(self, image):
        self.image = image
        super().__init__(f"identity is sent to {image}, not 0")


class MultiplicationNotPreserved(WSchreierError):
    def __init__(self, a, b):
        self.a, self.b = a, b
        super().__init__(f"f(a*b) != f(a)*f(b) at a={a}, b={b}")


class DomainMismatch(WSchreierError):
    pass


class SignatureMismatch(WSchreierError):
    """Objects being compared are over different (N, H)."""


class KernelMismatch(WSchreierError):
    def __init__(self, witness, detail=""):
        self.witness = witness
        super().__init__(f"k is not the kernel of e: {detail} (witness {witness})")


class CokernelMismatch(WSchreierError):
    def __init__(self, witness, detail=""):
        self.witness = witness
        super().__init__(f"e is not the cokernel of k: {detail} (witness {witness})")


class SectionNotSplitting(WSchreierError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"e(s(h)) != h at h={witness}")


class NotWeaklySchreier(WSchreierError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"g={witness} has no factorisation k(n)*s(e(g))")


class RetractionCapExceeded(WSchreierError):
    def __init__(self, count, cap):
        self.count, self.cap = count, cap
        super().__init__(f"{count} retractions exceeds the cap of {cap}")


class BoundExceeded(WSchreierError):
    pass


class NotAdmissible(WSchreierError):
    pass


class NotAnAction(WSchreierError):
    pass


class NotCommutative(WSchreierError):
    pass


class NotSemilattice(WSchreierError):
    pass


class HHasRightInvertibles(WSchreierError):
    pass


class NotAnIdeal(WSchreierError):
    pass


class ComplementNotSubmonoid(WSchreierError):
    pass


class IdealContainsRightInvertible(WSchreierError):
    pass


class UnsupportedField(WSchreierError):
    pass
