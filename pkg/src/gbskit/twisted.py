"""Twisted conjugacy: automorphisms, bounded orbit merging, certificates.

Bounded search can only ever prove that two elements are twisted
conjugate.  Separation comes from the modular homomorphism: if ``phi``
preserves Delta then ``Delta(h g phi(h)^-1) = Delta(g)``, so elements with
different moduli lie in different Reidemeister classes.
"""
from __future__ import annotations

import itertools
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import limits
from .errors import (
    DeltaNotRespected,
    GraphSyntaxError,
    InverseCheckFailed,
    MissingImage,
    RadiusTooLargePolicy,
    RelatorNotPreserved,
)
from .graph import NAME, GbsGraph
from .modular import delta_image_generators, delta_violation, modulus, modulus_json
from .normal_form import CanonicalWord, canonical_form, equal, is_identity, power, reduce
from .words import (
    PathWord,
    UserWord,
    generators,
    lift_generator,
    lift_user_word,
    parse_word,
    presentation,
    to_user_word,
)

# ---------------------------------------------------------------------------
# automorphisms


@dataclass(frozen=True, eq=False)
class Automorphism:
    """Images of the presentation generators plus a user-supplied inverse."""

    graph: GbsGraph
    forward: dict[str, UserWord]
    backward: dict[str, UserWord]
    validated: bool = False
    name: str = "phi"

    def inverse(self) -> Automorphism:
        return Automorphism(self.graph, self.backward, self.forward,
                            self.validated, f"{self.name}^-1")

    @cached_property
    def images(self) -> dict[str, PathWord]:
        """Reduced lifted image of each generator."""
        return {gen: reduce(lift_user_word(w, self.graph))
                for gen, w in self.forward.items()}

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "map": {k: str(v) for k, v in self.forward.items()},
            "inv": {k: str(v) for k, v in self.backward.items()},
        }


def _substitute(images: dict[str, PathWord], w: PathWord) -> PathWord:
    g = w.graph
    out = PathWord.identity(g)
    for gen, k in to_user_word(w).tokens:
        out = out * power(images[gen], k)
    return reduce(out)


def apply(phi: Automorphism, w: PathWord) -> PathWord:
    """Image of an element: collapse to generators, substitute, reduce."""
    return _substitute(phi.images, w)


def _apply_raw(graph: GbsGraph, forward: dict[str, UserWord], w: UserWord) -> PathWord:
    images = {gen: reduce(lift_user_word(img, graph)) for gen, img in forward.items()}
    return _substitute(images, lift_user_word(w, graph))


def validate_automorphism(g: GbsGraph, forward, backward, name="phi") -> Automorphism:
    """Check both maps kill every relator and are mutually inverse."""
    gens = generators(g)
    for direction, images in (("map", forward), ("inv", backward)):
        for gen in gens:
            if gen not in images:
                raise MissingImage(gen, direction)
    forward = {gen: forward[gen] for gen in gens}
    backward = {gen: backward[gen] for gen in gens}
    pres = presentation(g)
    for direction, images in (("map", forward), ("inv", backward)):
        for rel in pres.relators:
            if not is_identity(_apply_raw(g, images, rel)):
                raise RelatorNotPreserved(rel, direction)
    for first, second, label in ((forward, backward, "inv(map(s))"),
                                 (backward, forward, "map(inv(s))")):
        for gen in gens:
            once = to_user_word(_apply_raw(g, first, UserWord(((gen, 1),))))
            twice = _apply_raw(g, second, once)
            if not equal(twice, lift_generator(g, gen)):
                raise InverseCheckFailed(gen, label)
    return Automorphism(g, forward, backward, True, name)


def identity_automorphism(g: GbsGraph) -> Automorphism:
    ident = {gen: UserWord(((gen, 1),)) for gen in generators(g)}
    return Automorphism(g, ident, dict(ident), True, "id")


def inner_automorphism(g: GbsGraph, h: UserWord) -> Automorphism:
    """Conjugation ``s -> h s h^-1``; valid by construction."""
    fwd, bwd = {}, {}
    for gen in generators(g):
        s = UserWord(((gen, 1),))
        fwd[gen] = h * s * h.inverse()
        bwd[gen] = h.inverse() * s * h
    return Automorphism(g, fwd, bwd, True, f"conj({h})")


_AUT_RE = re.compile(rf"^(map|inv)\s+({NAME})\s*->\s*(.*)$")


def parse_automorphism(text: str, g: GbsGraph, name="phi") -> Automorphism:
    """Parse ``map s -> word`` / ``inv s -> word`` lines and validate."""
    maps: dict[str, dict[str, UserWord]] = {"map": {}, "inv": {}}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _AUT_RE.match(line)
        if not m:
            raise GraphSyntaxError(f"cannot parse {line!r}", lineno)
        kind, gen, word = m.groups()
        if gen in maps[kind]:
            raise GraphSyntaxError(f"second '{kind}' line for {gen!r}", lineno)
        maps[kind][gen] = parse_word(word, g)
    return validate_automorphism(g, maps["map"], maps["inv"], name)


def twisted_conjugate(h: PathWord, g: PathWord, phi: Automorphism) -> PathWord:
    """Reduced form of ``h g phi(h)^-1``."""
    return reduce(h * g * apply(phi, h).inverse())


# ---------------------------------------------------------------------------
# conjugator balls


def _ball_count_tokens(n_gens: int, radius: int) -> int:
    choices = 2 * radius
    total = 1
    for length in range(1, radius + 1):
        total += n_gens * choices * ((n_gens - 1) * choices) ** (length - 1)
    return total


def _ball_count_metric(n_gens: int, radius: int) -> int:
    total = 1
    for length in range(1, radius + 1):
        total += 2 * n_gens * (2 * n_gens - 1) ** (length - 1)
    return total


def conjugator_ball(g: GbsGraph, radius: int, metric: str = "tokens") -> list[UserWord]:
    """Words ordered by length, then by their serialized text.

    ``metric="tokens"``: at most ``radius`` syllables ``s^k`` with
    ``0 < |k| <= radius``.  ``metric="word"``: the Cayley-graph ball, total
    exponent weight at most ``radius``.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    gens = generators(g)
    counter = _ball_count_tokens if metric == "tokens" else _ball_count_metric
    size = counter(len(gens), radius)
    cap = limits.current().max_ball
    if size > cap:
        raise RadiusTooLargePolicy(size, cap)
    out = [UserWord()]
    if metric == "tokens":
        exps = [k for k in range(-radius, radius + 1) if k]
        layer = [()]
        for _ in range(radius):
            layer = [w + ((s, k),) for w in layer for s in gens
                     if not w or w[-1][0] != s for k in exps]
            out += sorted((UserWord(w) for w in layer), key=str)
    else:
        letters = [(s, e) for s in gens for e in (1, -1)]
        layer = [()]
        for _ in range(radius):
            layer = [w + (x,) for w in layer for x in letters
                     if not w or w[-1] != (x[0], -x[1])]
            out += sorted((UserWord(w) for w in layer), key=str)
    return out


def _parallel_map(fn: Callable, items: Sequence, threads: int) -> list:
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * threads))))


# ---------------------------------------------------------------------------
# orbit merging


@dataclass(frozen=True)
class Witness:
    source: int
    target: int
    h: UserWord


@dataclass(frozen=True)
class OrbitPartition:
    """Classes of a finite sample under twisted conjugation within a ball.

    Two elements land in one class only through a chain of recorded
    witnesses ``h`` with ``h g_source phi(h)^-1 = g_target``.  Separate
    classes are merely "distinct at radius r".
    """

    phi: Automorphism = field(repr=False)
    elements: tuple[CanonicalWord, ...]
    classes: tuple[tuple[int, ...], ...]
    witnesses: tuple[Witness, ...]
    radius: int

    def __post_init__(self):
        g = self.phi.graph
        for wit in self.witnesses:
            h = lift_user_word(wit.h, g)
            got = twisted_conjugate(h, self.elements[wit.source].word, self.phi)
            if not equal(got, self.elements[wit.target].word):
                raise AssertionError(f"witness {wit} does not verify")

    def class_of(self, i: int) -> int:
        for c, members in enumerate(self.classes):
            if i in members:
                return c
        raise IndexError(i)

    def to_json(self) -> dict:
        return {
            "classes": [[self.elements[i].text for i in c] for c in self.classes],
            "witnesses": [
                {"from": self.elements[w.source].text,
                 "to": self.elements[w.target].text,
                 "h": str(w.h)}
                for w in self.witnesses
            ],
            "radius": self.radius,
        }


def merge_classes_in_ball(phi: Automorphism, elements: Iterable[PathWord],
                          radius: int, threads: int = 1) -> OrbitPartition:
    g = phi.graph
    canon = [canonical_form(e) for e in elements]
    index: dict[CanonicalWord, list[int]] = {}
    for i, c in enumerate(canon):
        index.setdefault(c, []).append(i)

    parent = list(range(len(canon)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    ball = conjugator_ball(g, radius)

    def targets(h: UserWord):
        hp = reduce(lift_user_word(h, g))
        tail = apply(phi, hp).inverse()
        hits = []
        for i, c in enumerate(canon):
            key = canonical_form(hp * c.word * tail)
            hits.append(index.get(key, ()))
        return hits

    witnesses = []
    for h, hits in zip(ball, _parallel_map(targets, ball, threads)):
        for i, js in enumerate(hits):
            for j in js:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
                    witnesses.append(Witness(i, j, h))

    groups: dict[int, list[int]] = {}
    for i in range(len(canon)):
        groups.setdefault(find(i), []).append(i)
    classes = tuple(tuple(v) for _, v in sorted(groups.items()))
    return OrbitPartition(phi, tuple(canon), classes, tuple(witnesses), radius)


# ---------------------------------------------------------------------------
# modulus lower bounds and certificates


def modulus_class_count(phi: Automorphism, elements: Iterable[PathWord]):
    """Number of distinct moduli: a certified lower bound for R(phi)."""
    bad = delta_violation(phi)
    if bad is not None:
        raise DeltaNotRespected(bad)
    values: list[Fraction] = []
    for w in elements:
        m = modulus(w)
        if m not in values:
            values.append(m)
    return len(values), values


@dataclass(frozen=True)
class Certificate:
    """Moduli of the powers ``element^k``, pairwise distinct.

    ``kind == "NonUnimodularRInfinity"``: |modulus| != 1, so the powers
    never repeat a modulus and R(phi) is infinite.  ``"ModulusLowerBound"``:
    only a finite bound ``len(family_checked)``.
    """

    kind: str
    element: CanonicalWord
    modulus: Fraction
    family_checked: tuple[tuple[int, Fraction], ...]
    automorphism_id: str

    def __post_init__(self):
        vals = [m for _, m in self.family_checked]
        assert len(set(vals)) == len(vals), "family moduli repeat"
        for k, m in self.family_checked:
            assert m == self.modulus ** k
        if self.kind == "NonUnimodularRInfinity":
            assert abs(self.modulus) != 1

    @property
    def lower_bound(self):
        if self.kind == "NonUnimodularRInfinity":
            return "infinity"
        return len(self.family_checked)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "element": self.element.text,
            "modulus": modulus_json(self.modulus),
            "family_checked": [
                {"k": k, "modulus": modulus_json(m)} for k, m in self.family_checked
            ],
            "automorphism": self.automorphism_id,
            "lower_bound": str(self.lower_bound),
        }


@dataclass(frozen=True)
class NotFound:
    reason: str

    def to_json(self) -> dict:
        return {"kind": "NotFound", "reason": self.reason}


def power_family_certificate(phi: Automorphism, w: PathWord,
                             max_power: int = 10) -> Certificate:
    """Certificate from the powers ``w^1 .. w^max_power``.

    Checks the moduli by computing each power's modulus from the word, not
    from the closed form ``Delta(w)^k``.
    """
    bad = delta_violation(phi)
    if bad is not None:
        raise DeltaNotRespected(bad)
    base = modulus(w)
    family = []
    seen = set()
    for k in range(1, max_power + 1):
        m = modulus(w ** k)
        if m in seen:
            break
        seen.add(m)
        family.append((k, m))
    kind = "NonUnimodularRInfinity" if abs(base) != 1 else "ModulusLowerBound"
    return Certificate(kind, canonical_form(w), base, tuple(family), phi.name)


def rinfty_certificate(g: GbsGraph, phi: Automorphism) -> Certificate | NotFound:
    if delta_violation(phi) is not None:
        return NotFound("automorphism does not preserve Delta")
    image = delta_image_generators(g)
    for name, m in zip(image.edges, image.generators):
        if abs(m) != 1:
            return power_family_certificate(phi, lift_generator(g, name))
    return NotFound("unimodular")


# ---------------------------------------------------------------------------
# conjugate-count probe for the virtual center


@dataclass(frozen=True)
class ConjugateGrowthReport:
    """Conjugates ``h g h^-1`` for ``h`` in growing word-metric balls.

    An element of the virtual center has finitely many conjugates, so the
    count stabilizes; ``bound`` is the longest conjugate seen (letters plus
    nonzero vertex slots), the displacement bound of that element.
    """

    word: CanonicalWord
    radius: int
    sizes: tuple[int, ...]
    conjugates: tuple[str, ...]
    bound: int

    @property
    def stabilized(self) -> bool:
        return len(self.sizes) >= 3 and len(set(self.sizes[-3:])) == 1

    def to_json(self) -> dict:
        return {
            "word": self.word.text,
            "radius": self.radius,
            "sizes": list(self.sizes),
            "stabilized": self.stabilized,
            "bound": self.bound,
            "conjugates": list(self.conjugates),
        }


def _syllables(w: PathWord) -> int:
    return len(w.letters) + sum(1 for k in w.exps if k)


def conjugates_in_ball(g_word: PathWord, radius: int, threads: int = 1) -> ConjugateGrowthReport:
    g = g_word.graph
    ball = conjugator_ball(g, radius, metric="word")

    def conj(h: UserWord):
        hp = lift_user_word(h, g)
        return h.length, canonical_form(hp * g_word * hp.inverse())

    seen: dict[str, CanonicalWord] = {}
    sizes = []
    results = _parallel_map(conj, ball, threads)
    for r, group in itertools.groupby(results, key=lambda x: x[0]):
        for _, c in group:
            seen.setdefault(c.text, c)
        sizes.append(len(seen))
    bound = max(_syllables(c.word) for c in seen.values())
    return ConjugateGrowthReport(canonical_form(g_word), radius, tuple(sizes),
                                 tuple(sorted(seen)), bound)
