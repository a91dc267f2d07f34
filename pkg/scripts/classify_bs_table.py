"""Print the quasi-isometry class of BS(m, n) over a square of labels.

    python3 scripts/classify_bs_table.py --bound 5
"""
import argparse

from gbskit.classifier import qi_class
from gbskit.graph import bs_graph


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=4)
    args = ap.parse_args()
    labels = [k for k in range(-args.bound, args.bound + 1) if k]
    width = max(len(str(qi_class(bs_graph(m, n)))) for m in labels for n in labels)
    print("m\\n".rjust(5) + "".join(str(n).rjust(width + 1) for n in labels))
    for m in labels:
        row = "".join(str(qi_class(bs_graph(m, n))).rjust(width + 1) for n in labels)
        print(str(m).rjust(5) + row)


if __name__ == "__main__":
    main()
