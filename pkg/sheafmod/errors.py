"""Exception hierarchy.

Law failures are report entries, not exceptions; everything here signals a
violated precondition of an operation.
"""


class SheafModError(Exception):
    """Base exception for sheafmod errors."""

    def __init__(self, message: str, witness: str | None = None):
        self.witness = witness
        if witness:
            message = f"{message} (witness: {witness})"
        super().__init__(message)


class MalformedInput(SheafModError):
    """Input document or table does not describe a valid object."""

    pass


class SizeExceeded(SheafModError):
    """A construction would exceed a configured guardrail."""

    pass


class ForeignElement(SheafModError):
    """An element was used with a lattice it does not belong to."""

    pass


class NotALattice(SheafModError):
    """An order has no unique least upper or greatest lower bound somewhere."""

    pass


class NotAFrame(SheafModError):
    """A lattice fails a frame law."""

    pass


class NotAFrameHom(SheafModError):
    """A map fails to preserve finite meets or joins."""

    pass


class NotABLocale(SheafModError):
    """A module fails the module laws or stability, or its carrier is not a frame."""

    pass


class NotOpen(SheafModError):
    """Operation requires an open B-locale."""

    pass


class NotEtale(SheafModError):
    """Operation requires an étale B-locale."""

    pass


class NotSupported(SheafModError):
    """Inner product does not satisfy <x,x>x = x."""

    pass


class NoBasis(SheafModError):
    """The given family is not a Hilbert basis."""

    pass


class NotProjection(SheafModError):
    """Matrix is not symmetric and idempotent."""

    pass


class DimensionMismatch(SheafModError):
    """Matrix shapes do not compose."""

    pass


class ArrowLawViolation(SheafModError):
    """Matrix F: M -> N fails FM = F = NF."""

    pass


class NotAHom(SheafModError):
    """Function table is not a module homomorphism."""

    pass


class NotSheafHom(SheafModError):
    """Module homomorphism does not preserve local sections and their supports."""

    pass


class InconsistentVerdicts(SheafModError):
    """Two independent computations of the same verdict disagree."""

    pass
