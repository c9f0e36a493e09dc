class OrbGWError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(OrbGWError, ValueError):
    pass


class StructuralError(OrbGWError, KeyError):
    """A label or index does not belong to the presentation."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class IntegrityError(OrbGWError):
    """A structure constant violates the grading during a product."""


class SingularPairing(OrbGWError, ValueError):
    pass


class IncompleteData(OrbGWError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class InvalidGroup(OrbGWError, ValueError):
    pass


class TooLarge(OrbGWError):
    pass


class DegenerateConfiguration(OrbGWError, ValueError):
    pass
