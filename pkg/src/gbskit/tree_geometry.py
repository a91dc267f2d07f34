"""Action on the Bass-Serre tree, computed combinatorially.

The translation length of an element is the letter count of a cyclically
reduced conjugate; it is zero exactly for elliptic elements.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd

from .normal_form import CanonicalWord, canonical_form, cyclic_reduce, equal, reduce
from .words import PathWord


class Kind(str, Enum):
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class ElementClassification:
    kind: Kind
    translation_length: int
    cyclic_core: CanonicalWord

    def __post_init__(self):
        assert (self.kind is Kind.ELLIPTIC) == (self.translation_length == 0)

    def to_json(self) -> dict:
        return {"length": self.translation_length, "kind": self.kind.value,
                "core": self.cyclic_core.text}


def classify_element(w: PathWord) -> ElementClassification:
    core, _ = cyclic_reduce(w)
    n = core.letter_count
    return ElementClassification(
        Kind.ELLIPTIC if n == 0 else Kind.HYPERBOLIC, n, canonical_form(core))


def translation_length(w: PathWord) -> int:
    return classify_element(w).translation_length


@dataclass(frozen=True)
class Commensuration:
    """``w a^p w^-1 = a^q`` for the vertex generator ``a`` at the base."""

    p: int
    q: int
    base: str

    def to_json(self) -> dict:
        return {"p": str(self.p), "q": str(self.q), "base": self.base}


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def find_commensuration(w: PathWord, base_gen: str | None = None) -> Commensuration:
    """Smallest p > 0 with ``w a^p w^-1`` a power of ``a``.

    ``a^p`` is pushed through ``w`` from the innermost letter outward.
    Crossing a letter multiplies the exponent by exit/entry label, so the
    exponent must be divisible by each entry label it meets; p is the lcm
    of what those divisibility conditions demand.
    """
    g = w.graph
    base_gen = base_gen or g.base
    if base_gen != g.base or w.start != g.base or not w.is_loop:
        raise ValueError("commensuration needs a loop at the base and the "
                         "base vertex generator")
    r = reduce(w)
    edges = g.edge_map
    ratio = Fraction(1)
    p = 1
    for name, sign in reversed(r.letters):
        e = edges[name]
        entry, exit_ = e.entry_label(sign), e.exit_label(sign)
        # need p * ratio divisible by entry
        need = abs(ratio.denominator * entry) // gcd(ratio.numerator,
                                                       ratio.denominator * entry)
        p = _lcm(p, need)
        ratio *= Fraction(exit_, entry)
    q = p * ratio
    assert q.denominator == 1
    result = Commensuration(p, int(q), base_gen)
    a = PathWord.vertex_power
    if not equal(w * a(g, g.base, p) * w.inverse(), a(g, g.base, result.q)):
        raise AssertionError(f"commensuration check failed for {w}")
    return result
