"""Merge powers of the stable letter under twisted conjugation.

For each radius, reports how many classes bounded search leaves and the
certified lower bound from distinct moduli.  On non-unimodular graphs
the two agree at every radius: nothing ever merges.

    python3 scripts/twisted_survey.py data/bs23.graph --automorphism data/bs23_inv.aut
"""
import argparse
from pathlib import Path

from gbskit.graph import parse_graph
from gbskit.modular import respects_delta
from gbskit.twisted import (
    identity_automorphism,
    merge_classes_in_ball,
    modulus_class_count,
    parse_automorphism,
)
from gbskit.words import lift_generator


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("graph")
    ap.add_argument("--automorphism")
    ap.add_argument("--power", type=int, default=4)
    ap.add_argument("--max-radius", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    g = parse_graph(Path(args.graph).read_text())
    phi = (parse_automorphism(Path(args.automorphism).read_text(), g,
                              name=Path(args.automorphism).stem)
           if args.automorphism else identity_automorphism(g))
    gen = g.non_tree_edges[0].name if g.non_tree_edges else g.base
    loop = lift_generator(g, gen)
    elements = [loop ** k for k in range(-args.power, args.power + 1)]
    bound = modulus_class_count(phi, elements)[0] if respects_delta(phi) else None
    print(f"graph {args.graph}  automorphism {phi.name}  elements {gen}^k, |k| <= {args.power}")
    print(f"modulus lower bound: {bound}")
    for r in range(args.max_radius + 1):
        part = merge_classes_in_ball(phi, elements, r, args.threads)
        print(f"radius {r}: {len(part.classes)} classes, {len(part.witnesses)} witnesses")


if __name__ == "__main__":
    main()
