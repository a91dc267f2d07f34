"""The modular homomorphism Delta: G -> Q*.

Conjugation by an edge letter ``e^s`` sends ``a^(entry)`` to
``a^(exit)``, so ``Delta(e) = label_origin / label_terminus`` and Delta of
a word is the product over its letters.  Values are exact ``Fraction``s.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import GbsGraph
from .words import PathWord, lift_generator, lift_user_word

Modulus = Fraction


def modulus(w: PathWord) -> Fraction:
    edges = w.graph.edge_map
    out = Fraction(1)
    for name, sign in w.letters:
        e = edges[name]
        out *= Fraction(e.label_origin, e.label_terminus) ** sign
    return out


def modulus_json(m: Fraction) -> dict:
    return {"num": str(m.numerator), "den": str(m.denominator)}


@dataclass(frozen=True)
class DeltaImage:
    """Delta of the fundamental loop of each non-tree edge."""

    edges: tuple[str, ...]
    generators: tuple[Fraction, ...]

    @property
    def unimodular(self) -> bool:
        return all(abs(x) == 1 for x in self.generators)

    def to_json(self) -> list:
        return [dict(edge=e, **modulus_json(m))
                for e, m in zip(self.edges, self.generators)]


def delta_image_generators(g: GbsGraph) -> DeltaImage:
    names = tuple(e.name for e in g.non_tree_edges)
    return DeltaImage(names, tuple(modulus(lift_generator(g, n)) for n in names))


def is_unimodular(g: GbsGraph) -> bool:
    return delta_image_generators(g).unimodular


def delta_violation(phi) -> str | None:
    """First presentation generator whose modulus ``phi`` changes."""
    g = phi.graph
    for gen, image in phi.forward.items():
        if modulus(lift_user_word(image, g)) != modulus(lift_generator(g, gen)):
            return gen
    return None


def respects_delta(phi) -> bool:
    """Check Delta(phi(s)) == Delta(s) on every generator.

    Works on unvalidated candidates too, which makes it a cheap
    non-automorphism probe.
    """
    return delta_violation(phi) is None
