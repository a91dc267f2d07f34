"""Word problem for GBS groups.

Reduction pinches subwords ``e a^k e^-1`` (and ``e^-1 a^k e``) whose middle
power lies in the edge group; by Britton's lemma a path with no pinch left
and at least one letter is not null-homotopic.  The canonical form then
moves every removable multiple of an edge label leftward, leaving each
interior exponent in ``range(|label|)`` for the label of the edge just
crossed.  Reduced paths for the same element share their letter sequence,
so the canonical form is unique.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import GbsGraph
from .limits import check_exponent
from .words import PathWord, serialize_path


def _pinch(edge, sign: int, k: int) -> int | None:
    """Exponent after pinching ``l a^k l^-1`` for ``l = edge^sign``, or None."""
    entry = edge.entry_label(sign)
    if k % entry:
        return None
    return check_exponent(k // entry * edge.exit_label(sign))


def reduce(w: PathWord) -> PathWord:
    """Britton-reduce ``w``: pinch until no pinch applies.

    Single left-to-right pass with a stack; after a pinch the merged slot is
    tested again against the next incoming letter, which is the only place a
    new pinch can appear.
    """
    edges = w.graph.edge_map
    exps = [w.exps[0]]
    letters: list = []
    for (name, sign), k in zip(w.letters, w.exps[1:]):
        if letters and letters[-1] == (name, -sign):
            top_name, top_sign = letters[-1]
            moved = _pinch(edges[top_name], top_sign, exps[-1])
            if moved is not None:
                letters.pop()
                exps.pop()
                exps[-1] = check_exponent(exps[-1] + moved + k)
                continue
        letters.append((name, sign))
        exps.append(k)
    return PathWord(w.graph, w.start, tuple(exps), tuple(letters))


def is_reduced(w: PathWord) -> bool:
    edges = w.graph.edge_map
    for i in range(len(w.letters) - 1):
        (n1, s1), (n2, s2) = w.letters[i], w.letters[i + 1]
        if n1 == n2 and s1 == -s2 and _pinch(edges[n1], s1, w.exps[i + 1]) is not None:
            return False
    return True


def _normalize_residues(w: PathWord) -> PathWord:
    edges = w.graph.edge_map
    exps = list(w.exps)
    for i in range(len(w.letters), 0, -1):
        name, sign = w.letters[i - 1]
        e = edges[name]
        lab = e.entry_label(sign)
        r = exps[i] % abs(lab)
        s = (exps[i] - r) // lab
        exps[i] = r
        if s:
            exps[i - 1] = check_exponent(exps[i - 1] + s * e.exit_label(sign))
    return PathWord(w.graph, w.start, tuple(exps), w.letters)


@dataclass(frozen=True)
class CanonicalWord:
    """Reduced, residue-normalized path with its serialization as key."""

    word: PathWord
    text: str = field(init=False)
    digest: int = field(init=False, repr=False)

    def __post_init__(self):
        w = self.word
        object.__setattr__(self, "text", serialize_path(w))
        object.__setattr__(self, "digest", hash((w.start, w.exps, w.letters)))

    def __hash__(self) -> int:
        return self.digest

    def __eq__(self, other) -> bool:
        if not isinstance(other, CanonicalWord):
            return NotImplemented
        return self.digest == other.digest and self.text == other.text

    @property
    def is_identity(self) -> bool:
        return not self.word.letters and self.word.exps[0] == 0

    def __str__(self) -> str:
        return self.text


def canonical_form(w: PathWord) -> CanonicalWord:
    return CanonicalWord(_normalize_residues(reduce(w)))


def is_identity(w: PathWord) -> bool:
    if not w.is_loop:
        return False
    r = reduce(w)
    return not r.letters and r.exps[0] == 0


def equal(u: PathWord, v: PathWord) -> bool:
    if (u.start, u.end) != (v.start, v.end):
        return False
    return canonical_form(u) == canonical_form(v)


def cyclic_reduce(w: PathWord) -> tuple[PathWord, PathWord]:
    """Conjugate ``w`` to a cyclically reduced loop.

    Returns ``(core, conjugator)`` with ``w = conjugator core conjugator^-1``.
    The core is a loop at ``conjugator.end``, which for multi-vertex graphs
    may differ from the base.  The core has the fewest letters among all
    conjugates of ``w``.
    """
    g = w.graph
    r = reduce(w)
    conj = PathWord.identity(g, r.start)
    exps, letters = list(r.exps), list(r.letters)
    at = r.start
    edges = g.edge_map
    while True:
        # rotate the leading vertex power to the end
        if exps[0] and letters:
            conj = conj * PathWord.vertex_power(g, at, exps[0])
            exps[-1] = check_exponent(exps[-1] + exps[0])
            exps[0] = 0
        if len(letters) < 2:
            break
        (n1, s1), (nl, sl) = letters[0], letters[-1]
        if not (n1 == nl and s1 == -sl):
            break
        moved = _pinch(edges[nl], sl, exps[-1])
        if moved is None:
            break
        # conjugate by the first letter: the last and first letters pinch
        step = PathWord(g, at, (0, 0), (letters[0],))
        conj = conj * step
        at = step.end
        exps = exps[1:-1]
        exps[-1] = check_exponent(exps[-1] + moved)
        letters = letters[1:-1]
    core = PathWord(g, at, tuple(exps), tuple(letters))
    return core, conj


def random_word(seed: int, length: int, g: GbsGraph, max_exp: int = 8) -> PathWord:
    """Seeded random loop at the base with at most ``length`` letters.

    The walk only takes steps from which the base is still reachable
    through the spanning tree within the remaining budget, then returns
    along the tree.
    """
    if length <= 0:
        return PathWord.identity(g)
    rng = random.Random(seed)
    depth = {v: len(p) for v, p in g.tree_paths.items()}
    v = g.base
    exps = [rng.randint(-max_exp, max_exp)]
    letters = []
    budget = length
    while budget > depth[v]:
        options = [
            (name, sign) for name, sign in g.letters_from[v]
            if depth[g.edge_map[name].step(sign)[1]] <= budget - 1
        ]
        if not options:
            break
        name, sign = rng.choice(options)
        letters.append((name, sign))
        exps.append(rng.randint(-max_exp, max_exp))
        v = g.edge_map[name].step(sign)[1]
        budget -= 1
    w = PathWord(g, g.base, tuple(exps), tuple(letters))
    back = PathWord.tree_path(g, v).inverse()
    return w * back


def power(w: PathWord, k: int) -> PathWord:
    """``w^k`` without materializing long words for elliptic ``w``."""
    core, conj = cyclic_reduce(w)
    if core.letters:
        return reduce(w ** k)
    return reduce(conj * PathWord.vertex_power(w.graph, core.start,
                                               check_exponent(core.exps[0] * k))
                  * conj.inverse())
