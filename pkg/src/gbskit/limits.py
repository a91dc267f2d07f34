"""Resource caps shared by the word-problem and enumeration code.

Caps live in a context variable so concurrent callers can use different
limits without touching each other.
"""
import contextlib
import contextvars
import math
import os
from dataclasses import dataclass, replace

from .errors import ExponentOverflowPolicy

DEFAULT_MAX_DIGITS = 2 ** 20
DEFAULT_MAX_BALL = 10 ** 6

_LOG2_10 = math.log2(10)


@dataclass(frozen=True)
class Limits:
    max_digits: int = DEFAULT_MAX_DIGITS
    max_ball: int = DEFAULT_MAX_BALL

    @property
    def max_bits(self) -> int:
        return int(self.max_digits * _LOG2_10) + 1


def _from_env() -> Limits:
    raw = os.environ.get("GBSKIT_MAX_DIGITS")
    if raw:
        return Limits(max_digits=int(raw))
    return Limits()


_current: contextvars.ContextVar[Limits] = contextvars.ContextVar(
    "gbskit_limits", default=_from_env())


def current() -> Limits:
    return _current.get()


@contextlib.contextmanager
def limits(**overrides):
    """Temporarily override caps, e.g. ``with limits(max_ball=500): ...``."""
    token = _current.set(replace(_current.get(), **overrides))
    try:
        yield _current.get()
    finally:
        _current.reset(token)


def check_exponent(k: int) -> int:
    bits = k.bit_length()
    lim = _current.get()
    if bits > lim.max_bits:
        raise ExponentOverflowPolicy(int(bits / _LOG2_10), lim.max_digits)
    return k
