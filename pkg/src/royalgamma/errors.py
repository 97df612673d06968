"""Exception types shared across the package."""


class RoyalGammaError(Exception):
    """Base class for every error raised by this package."""


class InvalidData(RoyalGammaError):
    """Input data violates a documented schema or invariant."""


class ZeroPolynomial(RoyalGammaError):
    """Roots of the zero polynomial were requested."""


class DegenerateData(RoyalGammaError):
    """Interpolation nodes coincide or make a Pick entry blow up."""


class PoleAtNode(RoyalGammaError):
    """Kernel vectors evaluated at a forbidden point 1/conj(sigma_j)."""


class SingularPick(RoyalGammaError):
    """A Pick matrix failed its Cholesky factorization at the PD tolerance."""


class NoSuitableTau(RoyalGammaError):
    """No acceptable base point found in the deterministic candidate sequence."""


class UnsuitableTau(RoyalGammaError):
    """The exceptional parameter set for this base point is the whole circle."""


class ExceptionalZeta(RoyalGammaError):
    """The requested parameter lies in the exceptional set of the parametrization."""


class ZeroOrPoleAtPoint(RoyalGammaError):
    """Phasar derivative requested where the function vanishes or has a pole."""


class NotInner(RoyalGammaError):
    """A rational function expected to be inner fails the unimodularity check."""


class SingularPoint(RoyalGammaError):
    """The linear-fractional map is evaluated at its singularity."""


class PreconditionViolated(RoyalGammaError):
    """Construction inputs fail the documented scalar constraints."""


class DenominatorZeroInDisc(RoyalGammaError):
    """The shared denominator of a constructed map has a zero in the closed disc."""


class RoyalRange(RoyalGammaError):
    """The map sends the whole disc into the royal variety s^2 = 4p."""


class MultiplicityAboveOne(RoyalGammaError):
    """A royal node of multiplicity two or more is out of scope."""


class NumericalFailure(RoyalGammaError):
    """An internal consistency check failed; results would be unreliable."""
