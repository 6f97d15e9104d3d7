"""Exception hierarchy shared by all chspec modules."""


class ChspecError(Exception):
    """Base class for all chspec-specific failures."""


class BaseAtNodeError(ChspecError):
    """The chosen base point coincides with a node position modulo the period."""


class QuadratureError(ChspecError):
    """Adaptive quadrature could not reach the requested tolerance."""


class RootDeficitError(ChspecError):
    """Fewer real roots (with multiplicity) found than the all-real contract requires.

    Signals an engine bug or invalid input: the polynomials handled here are
    guaranteed to have only real zeros.
    """


class NonFiniteStateError(ChspecError):
    """The shooting integrator produced a non-finite state (overflow).

    Usually means |z| is too large for the chosen step count.
    """


class EpsilonTooLargeError(ChspecError):
    """Mollification width exceeds half the minimal inter-node distance."""


class LabelingConflictError(ChspecError):
    """Computed eigenvalue kinds contradict the periodic/antiperiodic sign pattern.

    Indicates a numerical multiplicity misclassification.
    """


class ZeroEigenvalueError(ChspecError):
    """An eigenvalue of exactly zero was passed to a reciprocal sum.

    Impossible for valid spectra (they consist of nonzero reals); signals an
    upstream bug.
    """
