"""Permutations, stack sorting, and the broom correspondence."""

from .permutations import *  # noqa: F401,F403
from .permutations import __all__ as _perm_all
from .stack import *  # noqa: F401,F403
from .stack import __all__ as _stack_all

_BROOM = {"omega", "omega_inverse", "omega_inversion_rule", "BroomReport", "verify_broom_iso"}

__all__ = [*_perm_all, *_stack_all, *sorted(_BROOM)]


def __getattr__(name):
    # the broom module depends on theta, which itself imports from this package
    if name in _BROOM:
        from . import broom
        return getattr(broom, name)
    raise AttributeError(name)
