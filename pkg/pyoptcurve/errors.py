"""
Exceptions raised by pyoptcurve.

Everything derives from OptCurveError so the command line front end can tell
library failures apart from programming errors.
"""


class OptCurveError(Exception):
    """Base class for all pyoptcurve errors."""


class SingularCurveError(OptCurveError, ValueError):
    """The Weierstrass model has vanishing discriminant."""


class DegenerateRecipeError(OptCurveError, ValueError):
    """A fibered product recipe does not give a smooth sextic."""


class DegenerateCoverError(OptCurveError, ValueError):
    """A double cover z^2 = u + v*y that is split, unramified or unsupported."""


class NotFoundError(OptCurveError, RuntimeError):
    """An exhaustive scan finished without the hit its theory guarantees."""


class InconsistentCountsError(OptCurveError, ArithmeticError):
    """Point counts that no Weil polynomial can produce."""


class UnsupportedError(OptCurveError, NotImplementedError):
    """A request outside the supported or allowed scope."""


class DatasetError(OptCurveError, ValueError):
    """A row of the embedded table dataset could not be parsed."""
