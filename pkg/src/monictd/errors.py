"""Exception taxonomy shared across the package.

Certification code never guesses: when a strict inequality cannot be
decided within the precision cap it raises ``Undecided`` (or a more
specific subclass) instead of returning a best-effort answer.
"""


class MonictdError(Exception):
    """Base class for all package errors."""


class ParseError(MonictdError):
    """Malformed polynomial / interval text. Carries a position when known."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None
                         else f"{message} (at position {position})")
        self.position = position


class ZeroPolynomial(MonictdError):
    """An operation that needs a nonzero polynomial got the zero polynomial."""


class ComplexRoots(MonictdError):
    """A polynomial required to be totally real has nonreal roots."""


class Undecided(MonictdError):
    """A comparison could not be decided below the precision cap."""


class StrictMaxUndecided(Undecided):
    """A strict local-maximum comparison hit the precision cap."""


class EmptyRange(MonictdError):
    """Coefficient descent produced an empty integer range (branch pruned)."""


class ValueNotAboveT(MonictdError):
    """An obstruction value does not exceed the requested threshold."""


class MissingTranslateClosure(MonictdError):
    """A cover system's left endpoints do not close up under x -> x+1."""


class NotCertified(MonictdError):
    """A product lacks the certificate required by the operation."""


class AlphaOutOfRange(MonictdError):
    """Exponent parameter outside the admissible range."""


class Infeasible(MonictdError):
    """The weight linear program has no feasible point."""


class UnboundedBelow(MonictdError):
    """The weight linear program is unbounded (degenerate factor set)."""


class ResultantFailed(MonictdError):
    """A candidate factor has |Res(f, Q)| != 1."""


class NotCritical(MonictdError):
    """The obstruction polynomial does not divide the critical-point numerator."""


class SupExceedsM(MonictdError):
    """The certified supremum exceeds the claimed obstruction value."""


class NoMonicVector(MonictdError):
    """Lattice reduction returned no vector with unit leading coefficient."""


class ContainsInteger(MonictdError):
    """The interval's interior contains an integer."""


class ReducibleOrComplex(MonictdError):
    """Quadratic input is reducible or has complex roots."""


class NoRoot(MonictdError):
    """The defining equation has no root in the admissible range."""


class MonicInput(MonictdError):
    """An operation restricted to nonmonic polynomials received a monic one."""


class QNotDividingR(MonictdError):
    """The claimed factor does not divide the witness polynomial."""


class RootsEscapeI(MonictdError):
    """A polynomial required to have all roots in I has a root outside."""


class NoCandidate(MonictdError):
    """No nonmonic irreducible factor qualifies (informative, not fatal)."""


class MultipleCandidates(MonictdError):
    """Several factors qualify; the maximal one is ambiguous (informative)."""

    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = list(candidates)
