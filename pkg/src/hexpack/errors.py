"""Exception hierarchy shared by every module."""


class GeometryError(ValueError):
    """Base class for rejected geometric input."""


class NotConvex(GeometryError):
    pass


class NotCentrallySymmetric(GeometryError):
    pass


class DegenerateArea(GeometryError):
    pass


class ZeroDirection(GeometryError):
    pass


class Unbounded(GeometryError):
    pass


class DegenerateAngles(GeometryError):
    pass


class DegenerateSection(GeometryError):
    pass


class InvalidInputs(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    """Refinement hit its sweep cap. The best estimate found is attached."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate
