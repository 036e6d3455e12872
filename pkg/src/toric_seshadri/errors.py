"""Exception hierarchy shared by every module of the package."""


class ToricError(Exception):
    """Base class for all errors raised by toric_seshadri."""


class DimensionError(ToricError, ValueError):
    """Vectors or subspaces of mismatched ambient dimension."""


class DegenerateInputError(ToricError, ValueError):
    pass


class PairingError(ToricError, ValueError):
    """A character difference is not a multiple of the wall generator."""


class ValidationError(ToricError, ValueError):
    """Input rejected before any computation (bad Bott numbers, mixed fans, ...)."""


class CompatibilityError(ToricError):
    """Filtrations admit no adapted decomposition on some maximal cone."""

    def __init__(self, message, cone=None):
        super().__init__(message)
        self.cone = cone


class InconsistentDataError(ToricError):
    """Character multisets on the two sides of a wall cannot be matched."""


class AmbiguousPairingError(ToricError):
    """Character data alone does not determine the splitting on a wall."""

    def __init__(self, message, wall=None, characters=None):
        super().__init__(message)
        self.wall = wall
        self.characters = characters


class PreconditionError(ToricError):
    pass


class HypothesisError(ToricError):
    """A theorem's hypotheses fail; carries the full report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
