"""Projection of F_n x Z onto its free quotient.

For a one-vertex graph whose loops are all labeled (1, 1) every relator
says the vertex generator commutes with a loop letter, so ``a`` is central
and ``G / <a>`` is free on the loop letters.  Twisted conjugacy in ``G``
projects to twisted conjugacy in the quotient under the induced map.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import KernelNotPreserved, NotUnimodularProduct
from .graph import GbsGraph
from .normal_form import canonical_form, random_word
from .twisted import Automorphism, apply, twisted_conjugate
from .words import PathWord, UserWord, lift_user_word, to_user_word

# Free words: tuples of nonzero ints, +i / -i for x_i and its inverse.
FreeWord = tuple[int, ...]


def free_reduce(w) -> FreeWord:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def free_inverse(w: FreeWord) -> FreeWord:
    return tuple(-x for x in reversed(w))


def free_mul(*words: FreeWord) -> FreeWord:
    return free_reduce(x for w in words for x in w)


def cyclic_free_reduce(w: FreeWord) -> FreeWord:
    w = free_reduce(w)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i:j + 1]


def free_conjugate(u: FreeWord, v: FreeWord) -> bool:
    """Conjugacy in a free group: equal cyclic words up to rotation."""
    cu, cv = cyclic_free_reduce(u), cyclic_free_reduce(v)
    if len(cu) != len(cv):
        return False
    if not cu:
        return True
    n = len(cu)
    doubled = cu + cu
    return any(doubled[i:i + n] == cv for i in range(n))


def format_free(w: FreeWord) -> str:
    if not w:
        return "1"
    return " ".join(f"x{abs(x)}" if x > 0 else f"x{abs(x)}^-1" for x in w)


@dataclass(frozen=True)
class FreeQuotientMap:
    source: GbsGraph
    letters: tuple[str, ...]
    kernel_generator: str

    @property
    def rank(self) -> int:
        return len(self.letters)

    def generator_image(self, gen: str) -> FreeWord:
        if gen == self.kernel_generator:
            return ()
        return (self.letters.index(gen) + 1,)


def free_quotient(g: GbsGraph) -> FreeQuotientMap:
    """Kill the central vertex generator of a one-vertex (1, 1)-loop graph.

    Centrality is read off the relators ``t a t^-1 a^-1``; nothing else is
    assumed.
    """
    if len(g.vertices) != 1:
        raise NotUnimodularProduct(f"graph has {len(g.vertices)} vertices")
    for e in g.edges:
        if (e.label_origin, e.label_terminus) != (1, 1):
            raise NotUnimodularProduct(
                f"loop {e.name} is labeled ({e.label_origin}, {e.label_terminus})")
    return FreeQuotientMap(g, tuple(e.name for e in g.edges), g.vertices[0])


def project_word(q: FreeQuotientMap, w: PathWord) -> FreeWord:
    out = []
    for gen, k in to_user_word(w).tokens:
        x = q.generator_image(gen)
        out.extend((x if k > 0 else free_inverse(x)) * abs(k))
    return free_reduce(out)


def project_user_word(q: FreeQuotientMap, w: UserWord) -> FreeWord:
    return project_word(q, lift_user_word(w, q.source))


@dataclass(frozen=True)
class FreeAutomorphism:
    images: tuple[FreeWord, ...]
    inverse_images: tuple[FreeWord, ...]

    def __call__(self, w: FreeWord) -> FreeWord:
        return _free_substitute(self.images, w)

    def inverse(self, w: FreeWord) -> FreeWord:
        return _free_substitute(self.inverse_images, w)

    @property
    def is_identity(self) -> bool:
        return all(img == (i + 1,) for i, img in enumerate(self.images))

    def to_json(self) -> dict:
        return {f"x{i + 1}": format_free(img) for i, img in enumerate(self.images)}


def _free_substitute(images, w: FreeWord) -> FreeWord:
    out = []
    for x in w:
        img = images[abs(x) - 1]
        out.extend(img if x > 0 else free_inverse(img))
    return free_reduce(out)


def induced_automorphism(q: FreeQuotientMap, phi: Automorphism) -> FreeAutomorphism:
    """The map phi induces on the free quotient, with its inverse checked.

    ``phi`` and its inverse must both send ``a`` into ``<a>``; otherwise the
    quotient map is not defined.
    """
    a = q.kernel_generator
    for direction in (phi, phi.inverse()):
        img = canonical_form(direction.images[a])
        if img.word.letters:
            raise KernelNotPreserved(img.text)
    fwd = tuple(project_user_word(q, phi.forward[t]) for t in q.letters)
    bwd = tuple(project_user_word(q, phi.backward[t]) for t in q.letters)
    induced = FreeAutomorphism(fwd, bwd)
    for i in range(q.rank):
        x = (i + 1,)
        if induced.inverse(induced(x)) != x or induced(induced.inverse(x)) != x:
            raise KernelNotPreserved(f"induced map is not invertible on x{i + 1}")
    return induced


@dataclass(frozen=True)
class ProjectionReport:
    samples: int
    passed: int
    failures: tuple[dict, ...]
    controls: tuple[dict, ...]
    induced: FreeAutomorphism

    @property
    def ok(self) -> bool:
        return self.passed == self.samples and all(c["correct"] for c in self.controls)

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "passed": self.passed,
            "failed": self.samples - self.passed,
            "failures": list(self.failures),
            "induced": self.induced.to_json(),
            "controls": list(self.controls),
            "ok": self.ok,
        }


def _controls(rank: int) -> list[tuple[FreeWord, FreeWord, bool]]:
    if rank == 0:
        return []
    if rank == 1:
        return [((1,), (1, 1), False), ((1,), (1,), True)]
    return [((1,), (2,), False), ((1,), (2, 1, -2), True),
            ((1, 2), (2, 1), True), ((1, 2), (1, -2), False)]


def projection_soundness(q: FreeQuotientMap, phi: Automorphism,
                         sample_count: int = 200, seed: int = 0,
                         radius: int = 6) -> ProjectionReport:
    """Check the projection carries twisted pairs to twisted pairs.

    For seeded ``h, g1`` with ``g2 = h g1 phi(h)^-1`` the projected witness
    must satisfy ``p(h) p(g1) phibar(p(h))^-1 = p(g2)`` exactly.  Negative
    and positive controls check plain free-group conjugacy (phibar = id).
    ``radius`` bounds the sampled word lengths.
    """
    induced = induced_automorphism(q, phi)
    g = q.source
    rng = random.Random(seed)
    passed = 0
    failures = []
    for i in range(sample_count):
        h = random_word(rng.getrandbits(64), radius, g)
        g1 = random_word(rng.getrandbits(64), radius, g)
        g2 = twisted_conjugate(h, g1, phi)
        ph = project_word(q, h)
        lhs = free_mul(ph, project_word(q, g1), free_inverse(induced(ph)))
        if lhs == project_word(q, g2):
            passed += 1
        else:
            failures.append({"sample": i, "h": str(h), "g1": str(g1)})
    controls = []
    for u, v, expected in _controls(q.rank):
        got = free_conjugate(u, v)
        controls.append({
            "u": format_free(u), "v": format_free(v),
            "conjugate": got, "expected": expected, "correct": got == expected,
            "verdict": ("correctly-conjugate" if expected else "correctly-distinct")
            if got == expected else "WRONG",
        })
    return ProjectionReport(sample_count, passed, tuple(failures), tuple(controls), induced)


def check_functoriality(q: FreeQuotientMap, phi: Automorphism, h: PathWord,
                        g1: PathWord) -> bool:
    """``p(h g phi(h)^-1) == p(h) p(g) phibar(p(h))^-1``."""
    induced = induced_automorphism(q, phi)
    ph = project_word(q, h)
    rhs = free_mul(ph, project_word(q, g1), free_inverse(induced(ph)))
    return project_word(q, twisted_conjugate(h, g1, phi)) == rhs and \
        project_word(q, apply(phi, h)) == induced(ph)
