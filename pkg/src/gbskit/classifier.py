"""Quasi-isometry type of a GBS group.

A non-elementary GBS group is BS(1, n), virtually F_n x Z (exactly the
unimodular case), or quasi-isometric to BS(2, 3).  Classification runs on
the graph left after elementary collapses; slide moves are not attempted,
so a graph that only becomes BS(1, n) after slides is reported in the
BS(2, 3) class.  The reduced graph is part of the report for auditing.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .graph import Edge, GbsGraph
from .modular import DeltaImage, delta_image_generators
from .twisted import identity_automorphism, rinfty_certificate
from .words import PathWord

TRIVIAL_Z = "TrivialZ"
VIRTUALLY_Z2 = "VirtuallyZ2"
SOLVABLE_BS1N = "SolvableBS1n"
VIRTUALLY_FNXZ = "VirtuallyFnxZ"
BS23_CLASS = "BS23Class"

THEOREM_CASE = {
    TRIVIAL_Z: "elementary",
    VIRTUALLY_Z2: "elementary",
    SOLVABLE_BS1N: 1,
    VIRTUALLY_FNXZ: 2,
    BS23_CLASS: 3,
}


def _collapsible(e: Edge):
    """(removed vertex, kept vertex, factor) or None.

    Collapsing uses ``a_removed = a_kept^factor``.
    """
    if e.is_loop:
        return None
    if abs(e.label_origin) == 1:
        return e.origin, e.terminus, e.label_origin * e.label_terminus
    if abs(e.label_terminus) == 1:
        return e.terminus, e.origin, e.label_origin * e.label_terminus
    return None


def _collapse(g: GbsGraph, e: Edge, removed: str, kept: str, factor: int) -> GbsGraph:
    edges = []
    for f in g.edges:
        if f.name == e.name:
            continue
        o, t, p, q = f.origin, f.terminus, f.label_origin, f.label_terminus
        if o == removed:
            o, p = kept, p * factor
        if t == removed:
            t, q = kept, q * factor
        edges.append(Edge(f.name, o, t, p, q))
    vertices = tuple(v for v in g.vertices if v != removed)
    base = kept if g.base == removed else g.base
    return GbsGraph(vertices, tuple(edges), base)


def reduce_graph_with_map(g: GbsGraph) -> tuple[GbsGraph, Callable[[PathWord], PathWord]]:
    """Collapse unit-labeled non-loop edges until none is left.

    Also returns the isomorphism on loops at the base: the collapsed edge's
    letters vanish and powers of the removed vertex generator become powers
    of the kept one.
    """
    steps = []
    current = g
    while True:
        for e in current.edges:
            hit = _collapsible(e)
            if hit:
                steps.append((e.name, *hit))
                current = _collapse(current, e, *hit)
                break
        else:
            break
    reduced = current

    def transport(w: PathWord) -> PathWord:
        vertices = w.vertex_sequence()
        exps = list(w.exps)
        letters = list(w.letters)
        for edge_name, removed, kept, factor in steps:
            new_exps, new_letters, new_vertices = [], [], []
            for i, k in enumerate(exps):
                v = vertices[i]
                if v == removed:
                    v, k = kept, k * factor
                if i > 0 and letters[i - 1][0] == edge_name:
                    new_exps[-1] += k
                else:
                    if i > 0:
                        new_letters.append(letters[i - 1])
                    new_exps.append(k)
                    new_vertices.append(v)
            exps, letters, vertices = new_exps, new_letters, new_vertices
        return PathWord(reduced, vertices[0], tuple(exps), tuple(letters))

    return reduced, transport


def reduce_graph(g: GbsGraph) -> GbsGraph:
    return reduce_graph_with_map(g)[0]


@dataclass(frozen=True)
class QiClass:
    kind: str
    reduced: GbsGraph
    delta_image: DeltaImage
    n: int | None = None

    def __post_init__(self):
        if self.kind == VIRTUALLY_FNXZ:
            assert self.delta_image.unimodular
        if self.kind == BS23_CLASS:
            assert not self.delta_image.unimodular

    @property
    def theorem_case(self):
        return THEOREM_CASE[self.kind]

    @property
    def elementary(self) -> bool:
        return self.theorem_case == "elementary"

    def __str__(self) -> str:
        return f"{self.kind}({self.n})" if self.n is not None else self.kind


def qi_class(g: GbsGraph) -> QiClass:
    red = reduce_graph(g)
    image = delta_image_generators(red)
    n = None
    if not red.edges:
        kind = TRIVIAL_Z
    elif len(red.edges) == 1 and red.edges[0].is_loop and (
            abs(red.edges[0].label_origin) == 1 or abs(red.edges[0].label_terminus) == 1):
        e = red.edges[0]
        if abs(e.label_origin) == 1 and abs(e.label_terminus) == 1:
            kind = VIRTUALLY_Z2
        else:
            kind = SOLVABLE_BS1N
            # normalize the unit label to +1: BS(-1, n) = BS(1, -n)
            n = e.label_origin * e.label_terminus
    elif image.unimodular:
        kind = VIRTUALLY_FNXZ
    else:
        kind = BS23_CLASS
    return QiClass(kind, red, image, n)


def classification_report(g: GbsGraph) -> dict:
    qc = qi_class(g)
    notes = []
    certificate = None
    if qc.elementary:
        notes.append("elementary (virtually cyclic or virtually Z^2): "
                     "the R-infinity case split does not apply")
    elif qc.kind == VIRTUALLY_FNXZ:
        notes.append("unimodular: Delta-certificate unavailable; "
                     "see projection_soundness tooling (ses-check)")
        notes.append(f"rank hint: first Betti number of reduced graph is "
                     f"{qc.reduced.betti}")
    else:
        certificate = rinfty_certificate(g, identity_automorphism(g)).to_json()
    if qc.kind == SOLVABLE_BS1N and qc.n < 0:
        notes.append("BS(1, n) with n < 0: relation to BS(1, |n|) up to "
                     "quasi-isometry is not decided here")
    if qc.kind == BS23_CLASS:
        notes.append("reduction uses elementary collapses only; a graph that "
                     "needs slide moves to become BS(1, n) would land here")
    report = {
        "input": g.to_json(),
        "reduced": qc.reduced.to_json(),
        "delta_image": delta_image_generators(g).to_json(),
        "class": qc.kind,
        "theorem_case": qc.theorem_case,
        "certificate": certificate,
    }
    if qc.n is not None:
        report["n"] = str(qc.n)
    report["notes"] = notes
    return report
