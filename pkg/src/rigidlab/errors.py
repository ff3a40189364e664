"""Exception types shared across rigidlab."""


class RigidLabError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(RigidLabError):
    pass


class AxiomViolation(RigidLabError):
    """A table set fails a named axiom; ``witness`` is the least offending tuple."""

    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = tuple(int(w) for w in witness)
        super().__init__(f"{axiom} violated at {self.witness}")


class NotASubmodule(RigidLabError):
    pass


class NotPrime(RigidLabError):
    pass


class RingMismatch(RigidLabError):
    pass


class EndoRingMismatch(RigidLabError):
    pass


class NonIdentityEndoForPlainProperty(RigidLabError):
    pass


class PreconditionNotSigmaReduced(RigidLabError):
    pass


class CarrierMismatch(RigidLabError):
    pass


class SigmaNotInvertibleForLaurent(RigidLabError):
    pass


class DegreeBudgetExceeded(RigidLabError):
    pass


class NotRegular(RigidLabError):
    pass


class NotCentral(RigidLabError):
    pass


class SigmaMovesS(RigidLabError):
    pass


class NotMultiplicativelyClosed(RigidLabError):
    pass


class CapExceeded(RigidLabError):
    pass


class BudgetExceeded(RigidLabError):
    pass


class HypothesisNotMet(RigidLabError):
    pass


class FormulaError(RigidLabError):
    pass


class AssertionFailure(RigidLabError):
    """An assert-mode implication failed on a corpus entry."""

    def __init__(self, implication, entry, witness):
        self.implication = implication
        self.entry = entry
        self.witness = witness
        super().__init__(f"implication {implication} violated on {entry}: {witness}")
