from __future__ import annotations

from typing import Any, Optional

from .context_manager import _DecoratorContextManager


class Tolerances(object):
    """
    Process-wide numerical defaults. Functions read these when their own tolerance arguments are
    left as `None`; override them temporarily with `set_tolerances`.
    """

    RESIDUAL_TOL = 1e-10
    CLUSTER_TOL = 1e-8
    NULL_NORM = 1e-12
    ENERGY_TOL = 1e-8
    STATE_CAP = 24
    DENSE_CHAIN_CAP = 14
    SEED = 0

    _FIELDS = ("residual_tol", "cluster_tol", "null_norm", "energy_tol", "state_cap", "dense_chain_cap", "seed")

    @classmethod
    def as_dict(cls):
        return {name: getattr(cls, name.upper()) for name in cls._FIELDS}


def resolve(value: Optional[Any], name: str) -> Any:
    return getattr(Tolerances, name.upper()) if value is None else value


class set_tolerances(_DecoratorContextManager):
    """
    Context-manager that overrides the defaults in `Tolerances`.

    Example::
        >>> with colortoric.set_tolerances(cluster_tol = 1e-6, seed = 3):
        ...     report = lowest_eigs(h, k = 8)
    """

    def __init__(self, **overrides):
        for name in overrides:
            assert name in Tolerances._FIELDS, f"Unknown tolerance `{name}`."

        self.overrides = overrides
        self.original = None

    def __enter__(self) -> None:
        self.original = Tolerances.as_dict()
        for name, value in self.overrides.items():
            setattr(Tolerances, name.upper(), value)

    def __exit__(self, exc_type: Any, exc_value: Any, traceback: Any) -> None:
        for name, value in self.original.items():
            setattr(Tolerances, name.upper(), value)

    def clone(self):
        return self.__class__(**self.overrides)
