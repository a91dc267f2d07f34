"""User-facing words and Serre path words.

Users write words in the spanning-tree presentation: vertex generators
``a_v`` and letters of the non-tree edges.  Internally every element is a
:class:`PathWord`, an edge path ``k_0 e_1 k_1 ... e_n k_n`` whose slots
``k_i`` are exponents of the vertex generator at the current vertex.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field

from .errors import (
    PathError,
    TreeEdgeLetterUsed,
    UnknownGenerator,
    WordSyntaxError,
)
from .graph import NAME, GbsGraph, Letter

_TOKEN_RE = re.compile(rf"^({NAME})(?:\^([+-]?\d+))?$")


def _fmt(name: str, k: int) -> str:
    return name if k == 1 else f"{name}^{k}"


def _tokenize(text: str):
    """Yield ``(position, name, exponent)``; position is 1-based."""
    for pos, tok in enumerate(text.split(), start=1):
        if tok == "1":
            continue
        m = _TOKEN_RE.match(tok)
        if not m:
            raise WordSyntaxError(f"bad token {tok!r}", pos)
        yield pos, m.group(1), int(m.group(2)) if m.group(2) else 1


# ---------------------------------------------------------------------------
# user words


@dataclass(frozen=True)
class UserWord:
    """Word over generator names, adjacent equal generators merged."""

    tokens: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        merged: list[list] = []
        for name, k in self.tokens:
            if merged and merged[-1][0] == name:
                merged[-1][1] += k
                if merged[-1][1] == 0:
                    merged.pop()
            elif k:
                merged.append([name, k])
        object.__setattr__(self, "tokens", tuple((n, k) for n, k in merged))

    def __mul__(self, other: UserWord) -> UserWord:
        return UserWord(self.tokens + other.tokens)

    def inverse(self) -> UserWord:
        return UserWord(tuple((n, -k) for n, k in reversed(self.tokens)))

    def __pow__(self, k: int) -> UserWord:
        base = self if k >= 0 else self.inverse()
        return UserWord(base.tokens * abs(k))

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def length(self) -> int:
        """Word-metric length: sum of absolute exponents."""
        return sum(abs(k) for _, k in self.tokens)

    def __str__(self) -> str:
        if not self.tokens:
            return "1"
        return " ".join(_fmt(n, k) for n, k in self.tokens)


def generators(g: GbsGraph) -> tuple[str, ...]:
    """Generators of the spanning-tree presentation, in declaration order."""
    return (*g.vertices, *(e.name for e in g.non_tree_edges))


def parse_word(text: str, g: GbsGraph) -> UserWord:
    tokens = []
    for pos, name, k in _tokenize(text):
        if g.is_vertex(name):
            pass
        elif g.is_edge(name):
            if name in g.tree:
                raise TreeEdgeLetterUsed(name, pos)
        else:
            raise UnknownGenerator(name, pos)
        tokens.append((name, k))
    return UserWord(tuple(tokens))


# ---------------------------------------------------------------------------
# path words


@dataclass(frozen=True)
class PathWord:
    """Edge path ``k_0 l_1 k_1 ... l_n k_n`` starting at ``start``.

    ``exps[i]`` is an exponent of the generator of the vertex occupied after
    ``i`` letters.  Elements of the fundamental group are the paths that
    start and end at the base vertex.
    """

    graph: GbsGraph = field(compare=False, repr=False)
    start: str
    exps: tuple[int, ...]
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if len(self.exps) != len(self.letters) + 1:
            raise PathError("need exactly one exponent slot per vertex visit")
        v = self.start
        if not self.graph.is_vertex(v):
            raise PathError(f"unknown start vertex {v!r}")
        for i, (name, sign) in enumerate(self.letters):
            src, dst = self.graph.edge_map[name].step(sign)
            if src != v:
                raise PathError(
                    f"letter {i + 1} ({_fmt(name, sign)}) leaves {src!r} "
                    f"but the path is at {v!r}")
            v = dst
        object.__setattr__(self, "_end", v)

    @classmethod
    def identity(cls, g: GbsGraph, at: str | None = None) -> PathWord:
        return cls(g, at or g.base, (0,))

    @classmethod
    def vertex_power(cls, g: GbsGraph, v: str, k: int) -> PathWord:
        return cls(g, v, (k,))

    @classmethod
    def tree_path(cls, g: GbsGraph, v: str) -> PathWord:
        """Tree path from the base to ``v``."""
        letters = g.tree_paths[v]
        return cls(g, g.base, (0,) * (len(letters) + 1), letters)

    @property
    def end(self) -> str:
        return self._end

    @property
    def is_loop(self) -> bool:
        return self.start == self.end

    @property
    def letter_count(self) -> int:
        return len(self.letters)

    def vertex_sequence(self) -> list[str]:
        seq = [self.start]
        for name, sign in self.letters:
            seq.append(self.graph.edge_map[name].step(sign)[1])
        return seq

    def __mul__(self, other: PathWord) -> PathWord:
        if self.end != other.start:
            raise PathError(
                f"cannot concatenate: path ends at {self.end!r}, "
                f"next starts at {other.start!r}")
        exps = (*self.exps[:-1], self.exps[-1] + other.exps[0], *other.exps[1:])
        return PathWord(self.graph, self.start, exps,
                        self.letters + other.letters)

    def inverse(self) -> PathWord:
        return PathWord(
            self.graph, self.end,
            tuple(-k for k in reversed(self.exps)),
            tuple((n, -s) for n, s in reversed(self.letters)),
        )

    def __pow__(self, k: int) -> PathWord:
        if not self.is_loop:
            raise PathError("only loops can be raised to powers")
        w = self if k >= 0 else self.inverse()
        m = abs(k)
        if m == 0:
            return PathWord.identity(self.graph, self.start)
        if not w.letters:
            return PathWord(self.graph, self.start, (w.exps[0] * m,))
        seam = w.exps[-1] + w.exps[0]
        inner = list(w.exps[1:-1])
        exps = [w.exps[0]]
        for i in range(m):
            exps += inner
            exps.append(seam if i < m - 1 else w.exps[-1])
        return PathWord(self.graph, self.start, tuple(exps), w.letters * m)

    def __str__(self) -> str:
        return serialize_path(self)


def serialize_path(w: PathWord) -> str:
    """Word syntax for a path; runs of one letter collapse to a power.

    Paths that do not start at the base carry an ``@vertex`` prefix.
    """
    parts = []
    vertices = w.vertex_sequence()
    i = 0
    n = len(w.letters)
    if w.exps[0]:
        parts.append(_fmt(vertices[0], w.exps[0]))
    while i < n:
        name, sign = w.letters[i]
        run = 1
        while (i + run < n and w.letters[i + run] == (name, sign)
               and w.exps[i + run] == 0):
            run += 1
        parts.append(_fmt(name, sign * run))
        i += run
        if w.exps[i]:
            parts.append(_fmt(vertices[i], w.exps[i]))
    text = " ".join(parts) if parts else "1"
    if w.start != w.graph.base:
        text = f"@{w.start} {text}"
    return text


def parse_path_word(text: str, g: GbsGraph, start: str | None = None) -> PathWord:
    """Parse a path written letter by letter.

    Vertex tokens must name the vertex the path currently occupies; edge
    tokens ``e^k`` expand to ``|k|`` copies of ``e^(+-1)``.  A leading
    ``@v`` token sets the start vertex.
    """
    stripped = text.split()
    if stripped and stripped[0].startswith("@"):
        start = stripped[0][1:]
        text = " ".join(stripped[1:])
    v = start or g.base
    if not g.is_vertex(v):
        raise PathError(f"unknown start vertex {v!r}")
    exps = [0]
    letters: list[Letter] = []
    for pos, name, k in _tokenize(text):
        if g.is_vertex(name):
            if name != v:
                raise PathError(f"token {pos}: path is at {v!r}, not {name!r}")
            exps[-1] += k
        elif g.is_edge(name):
            sign = 1 if k > 0 else -1
            for _ in range(abs(k)):
                src, dst = g.edge_map[name].step(sign)
                if src != v:
                    raise PathError(
                        f"token {pos}: {_fmt(name, sign)} leaves {src!r}, "
                        f"path is at {v!r}")
                letters.append((name, sign))
                exps.append(0)
                v = dst
        else:
            raise UnknownGenerator(name, pos)
    return PathWord(g, start or g.base, tuple(exps), tuple(letters))


# ---------------------------------------------------------------------------
# lifting and collapsing


def lift_generator(g: GbsGraph, name: str) -> PathWord:
    """Loop at the base representing one presentation generator.

    ``a_v`` becomes (tree path to v) a_v (back); a non-tree letter ``e``
    becomes (tree path to t(e)) e (tree path from o(e) back), since the
    letter ``e`` steps from t(e) to o(e).
    """
    if g.is_vertex(name):
        p = PathWord.tree_path(g, name)
        return p * PathWord.vertex_power(g, name, 1) * p.inverse()
    if not g.is_edge(name):
        raise UnknownGenerator(name)
    if name in g.tree:
        raise TreeEdgeLetterUsed(name)
    e = g.edge_map[name]
    src, dst = e.step(1)
    letter = PathWord(g, src, (0, 0), ((name, 1),))
    return PathWord.tree_path(g, src) * letter * PathWord.tree_path(g, dst).inverse()


def lift_user_word(w: UserWord, g: GbsGraph) -> PathWord:
    out = PathWord.identity(g)
    for name, k in w.tokens:
        if g.is_vertex(name):
            p = PathWord.tree_path(g, name)
            out = out * p * PathWord.vertex_power(g, name, k) * p.inverse()
        else:
            out = out * lift_generator(g, name) ** k
    return out


def to_user_word(w: PathWord) -> UserWord:
    """Inverse of lifting for loops at the base: tree letters drop out."""
    if w.start != w.graph.base or not w.is_loop:
        raise PathError("only loops at the base correspond to group elements")
    g = w.graph
    tokens = []
    vertices = w.vertex_sequence()
    for i, k in enumerate(w.exps):
        if k:
            tokens.append((vertices[i], k))
        if i < len(w.letters):
            name, sign = w.letters[i]
            if name not in g.tree:
                tokens.append((name, sign))
    return UserWord(tuple(tokens))


# ---------------------------------------------------------------------------
# presentation


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[UserWord, ...]

    def __str__(self) -> str:
        rels = ", ".join(str(r) for r in self.relators)
        return f"<{', '.join(self.generators)} | {rels}>"


def relator(g: GbsGraph, edge_name: str) -> UserWord:
    e = g.edge_map[edge_name]
    if edge_name in g.tree:
        toks = ((e.origin, e.label_origin), (e.terminus, -e.label_terminus))
    else:
        toks = ((e.name, 1), (e.origin, e.label_origin), (e.name, -1),
                (e.terminus, -e.label_terminus))
    return UserWord(toks)


def presentation(g: GbsGraph) -> Presentation:
    return Presentation(generators(g), tuple(relator(g, e.name) for e in g.edges))


def random_user_word(seed: int, length: int, g: GbsGraph,
                     max_exp: int = 8) -> UserWord:
    """Seeded word of at most ``length`` tokens over the presentation."""
    rng = random.Random(seed)
    gens = generators(g)
    toks = []
    for _ in range(length):
        k = rng.randint(1, max_exp) * rng.choice((1, -1))
        toks.append((rng.choice(gens), k))
    return UserWord(tuple(toks))
