"""Exception types shared across the package."""


class SpikesError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(SpikesError):
    """Shapes or lengths of GF(2) objects do not line up."""


class UnknownLabel(SpikesError):
    """A column or element label is not present in the object addressed."""


class MemoryBudget(SpikesError):
    """An exhaustive enumeration would exceed the configured size bound."""


class Unsupported(SpikesError):
    """The operation is not defined for this representation."""


class RankTooSmall(SpikesError):
    """Spike constructions need rank at least 3."""


class InvalidC3(SpikesError):
    """A proposed transversal-circuit family violates the spike conditions."""


class InvalidCircuitFamily(SpikesError):
    """A circuit collection fails the circuit axioms."""


class NotCircuitHyperplane(SpikesError):
    """Relaxation target is not both a circuit and a hyperplane."""


class ElementNotInX(SpikesError):
    """The split element e must belong to the split set X."""


class LoopElement(SpikesError):
    """The split element e must not be a loop."""


class ReservedLabel(SpikesError):
    """'alpha' and 'gamma' are reserved for the columns a split adjoins."""


class ParityMismatch(SpikesError):
    """The rank parity does not match the requested construction variant."""


class NotBinary(SpikesError):
    """The circuit-level split is only defined for binary matroids."""
