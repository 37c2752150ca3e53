"""Exception types shared across the package."""


class ForklatError(Exception):
    """Base class for all errors raised by this package."""

    #: short machine-readable tag used in CLI error JSON
    code = "error"


class NotALattice(ForklatError):
    """Some pair of elements lacks a least upper or greatest lower bound."""

    code = "not-a-lattice"


class NotTransitiveReduction(ForklatError):
    """A cover pair is implied by other cover pairs."""

    code = "not-transitive-reduction"


class InconsistentLeftOrder(ForklatError):
    """A diagram left-to-right order does not match the cover relation."""

    code = "inconsistent-left-order"


class NotSPS(ForklatError):
    """The lattice is not slim or not semimodular."""

    code = "not-sps"


class NotACoveringSquare(ForklatError):
    """The four given elements do not form a covering square."""

    code = "not-a-covering-square"


class SizeBound(ForklatError):
    """A configured size bound would be exceeded."""

    code = "size-bound"


class ClassClash(ForklatError):
    """Two class rules of the direct fork-congruence construction disagree."""

    code = "class-clash"


class Unsatisfiable(ForklatError):
    """A random generation step has no valid move."""

    code = "unsatisfiable"


class InvalidStep(ForklatError):
    """A history step does not name a covering square of the current lattice."""

    code = "invalid-step"
