from __future__ import annotations

from typing import Any


class ColortoricError(Exception):
    """Base class of every domain failure raised by `colortoric`."""

    def __init__(self, message: str = "", **params: Any):
        super(ColortoricError, self).__init__(message)
        self.message = message
        self.params = params

    def to_dict(self):
        return {"error": self.__class__.__name__, "message": self.message, "params": self.params}


class SizeMismatch(ColortoricError, ValueError):
    pass


class InconsistentGroup(ColortoricError):
    pass


class NonCommuting(ColortoricError):
    pass


class StateNotUnique(ColortoricError):
    pass


class CapExceeded(ColortoricError):
    pass


class NotThreeColorable(ColortoricError):
    pass


class ShadingInfeasible(ColortoricError):
    pass


class RoutingFailed(ColortoricError):
    pass


class DoesNotFit(ColortoricError):
    pass


class InadmissibleTorus(ColortoricError):
    pass


class NonConvergence(ColortoricError):
    pass


class AuditFailure(ColortoricError):
    pass
