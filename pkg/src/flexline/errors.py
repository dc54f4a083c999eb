"""Error taxonomy shared by all flexline modules.

Every failure mode that callers are expected to handle gets its own class so
that the CLI can map exceptions to structured report entries.  All of them
derive from FlexlineError.
"""


class FlexlineError(Exception):
    """Base class for all library-specific errors."""


# --- field construction / embedding ---------------------------------------

class NotPrime(FlexlineError):
    """Characteristic argument is not a prime number."""


class ExcludedCharacteristic(FlexlineError):
    """Characteristic 2 or 3 requested; the toolkit only supports p >= 5."""


class Reducible(FlexlineError):
    """A polynomial that must be irreducible factors over the given field."""


class DegreeOverflow(FlexlineError):
    """A required field extension exceeds the configured degree cap."""


class NoEmbedding(FlexlineError):
    """No field embedding exists (degree does not divide, or p differs)."""


# --- polynomial elimination ------------------------------------------------

class LeadingCoefficientVanishes(FlexlineError):
    """The leading z-coefficient vanishes; change coordinates and retry."""


class EliminationDegenerate(FlexlineError):
    """Resultant-based elimination stayed degenerate after all retries."""


# --- projective geometry ---------------------------------------------------

class SingularMatrix(FlexlineError):
    """A 3x3 matrix expected to be invertible has zero determinant."""


class DegenerateFrame(FlexlineError):
    """Four points meant to form a projective frame have three collinear."""


class ReducibleConic(FlexlineError):
    """The conic splits into lines; it cannot be parametrized as a P^1."""


class BaseNotOnConic(FlexlineError):
    """The chosen base point does not lie on the conic."""


class DegeneratePoints(FlexlineError):
    """A cross-ratio was requested for a quadruple with repeated points."""


# --- curve analysis ---------------------------------------------------------

class HessianVanishes(FlexlineError):
    """The Hessian determinant is identically zero for this curve."""


class SingularPoint(FlexlineError):
    """The point is singular on the curve (no well-defined tangent)."""


class LineIsComponent(FlexlineError):
    """The line is contained in the curve; contact order is undefined."""


class WildFlexBehavior(FlexlineError):
    """Resultant-derived weight and contact order disagree at some point.

    Carries both numbers so callers can report the discrepancy instead of
    guessing which one to trust.
    """

    def __init__(self, point, weight, contact):
        self.point = point
        self.weight = weight
        self.contact = contact
        super().__init__(
            f"weight/contact mismatch at {point}: "
            f"resultant weight {weight}, contact order {contact}"
        )


# --- configurations ----------------------------------------------------------

class DegenerateConfiguration(FlexlineError):
    """The configuration has no 4 support points in general position."""


class GroupTooLarge(FlexlineError):
    """A transporter/automorphism search exceeded the sanity cap."""


# --- catalog -----------------------------------------------------------------

class InadmissibleCharacteristic(FlexlineError):
    """The requested catalog curve is singular at this characteristic."""


class SingularParameter(FlexlineError):
    """The family parameter makes the catalog curve singular (u in {0,1})."""


# --- backend -----------------------------------------------------------------

class BackendUnavailable(FlexlineError):
    """The requested kernel backend cannot be loaded."""
