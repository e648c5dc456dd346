"""Deliberate fault injection used to show that the verification cells can fail."""
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass


@dataclass(frozen=True)
class Faults:
    """Active faults.

    Attributes
    ----------
    alpha_shift : float
        Relative perturbation applied to every ``alpha`` ladder coefficient.
    beta_shift : float
        Absolute shift added to every ``beta`` ladder coefficient.
    flip_rodrigues_sign : bool
        Negate the Rodrigues constant ``A_mn`` for ``m > 0``.
    """

    alpha_shift: float = 0.0
    beta_shift: float = 0.0
    flip_rodrigues_sign: bool = False


_ACTIVE = ContextVar("ladderlattice_faults", default=Faults())


def active():
    """The faults in effect for the current context."""
    return _ACTIVE.get()


@contextmanager
def inject(**kwargs):
    """Context manager that activates the given faults."""
    token = _ACTIVE.set(Faults(**kwargs))
    try:
        yield active()
    finally:
        _ACTIVE.reset(token)
