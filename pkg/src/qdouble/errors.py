"""Exception types raised across the package."""


class QDoubleError(Exception):
    """Base class; the message names the failed check."""


class GroupError(QDoubleError):
    pass


class CharacterError(QDoubleError):
    pass


class ModularDataError(QDoubleError):
    pass


class FusionError(QDoubleError):
    pass


class TheoremViolation(QDoubleError):
    """A proven identity failed numerically; never expected on valid input."""


class GraphError(QDoubleError):
    pass


class FixtureMismatch(QDoubleError):
    pass
