"""``gbskit`` command line.

JSON is the contract: keys come out in a fixed order, rationals are exact
strings, and identical inputs give byte-identical output for any
``--threads``.  Exit codes: 0 ok, 2 input error, 3 invalid automorphism,
4 unmet precondition, 5 cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import limits
from .classifier import classification_report
from .errors import GbsError, InputError
from .graph import GbsGraph, parse_graph
from .modular import modulus, modulus_json, respects_delta
from .normal_form import canonical_form
from .quotient import free_quotient, projection_soundness
from .tree_geometry import classify_element, find_commensuration
from .twisted import (
    Automorphism,
    conjugates_in_ball,
    identity_automorphism,
    merge_classes_in_ball,
    modulus_class_count,
    parse_automorphism,
    rinfty_certificate,
)
from .words import PathWord, lift_user_word, parse_word

SUBCOMMANDS = ("classify", "nf", "tl", "commens", "modulus", "twisted",
               "certify", "ses-check", "conj-growth")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    graph: Path
    word: str | None = None
    automorphism: Path | None = None
    words: Path | None = None
    radius: int = 3
    samples: int = 200
    seed: int = 0
    threads: int = 1
    format: str = "json"
    max_ball: int = limits.DEFAULT_MAX_BALL
    max_digits: int = limits.DEFAULT_MAX_DIGITS

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ValueError(f"unknown subcommand {self.subcommand!r}")
        for name in ("radius", "samples", "seed"):
            if getattr(self, name) < 0:
                raise ValueError(f"--{name} must be nonnegative")
        if self.threads < 1:
            raise ValueError("--threads must be at least 1")

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        max_digits = ns.max_digits
        if max_digits is None:
            env = os.environ.get("GBSKIT_MAX_DIGITS")
            max_digits = int(env) if env else limits.DEFAULT_MAX_DIGITS
        return cls(
            subcommand=ns.command, graph=Path(ns.graph),
            word=getattr(ns, "word", None),
            automorphism=Path(ns.automorphism) if getattr(ns, "automorphism", None) else None,
            words=Path(ns.words) if getattr(ns, "words", None) else None,
            radius=ns.radius, samples=ns.samples, seed=ns.seed,
            threads=ns.threads, format=ns.format,
            max_ball=ns.max_ball, max_digits=max_digits,
        )


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _load_graph(cfg: RunConfig) -> GbsGraph:
    return parse_graph(_read(cfg.graph))


def _load_aut(cfg: RunConfig, g: GbsGraph) -> Automorphism:
    if cfg.automorphism is None:
        return identity_automorphism(g)
    return parse_automorphism(_read(cfg.automorphism), g, name=cfg.automorphism.stem)


def _element(cfg: RunConfig, g: GbsGraph) -> PathWord:
    return lift_user_word(parse_word(cfg.word, g), g)


def cmd_classify(cfg):
    return classification_report(_load_graph(cfg))


def cmd_nf(cfg):
    g = _load_graph(cfg)
    c = canonical_form(_element(cfg, g))
    return {"word": cfg.word, "canonical": c.text, "letters": c.word.letter_count}


def cmd_tl(cfg):
    g = _load_graph(cfg)
    return {"word": cfg.word, **classify_element(_element(cfg, g)).to_json()}


def cmd_commens(cfg):
    g = _load_graph(cfg)
    return {"word": cfg.word, **find_commensuration(_element(cfg, g)).to_json()}


def cmd_modulus(cfg):
    g = _load_graph(cfg)
    return {"word": cfg.word, **modulus_json(modulus(_element(cfg, g)))}


def cmd_twisted(cfg):
    g = _load_graph(cfg)
    phi = _load_aut(cfg, g)
    if cfg.words is None:
        raise InputError("twisted needs --words")
    lines = [ln.split("#", 1)[0].strip() for ln in _read(cfg.words).splitlines()]
    elements = [lift_user_word(parse_word(ln, g), g) for ln in lines if ln]
    partition = merge_classes_in_ball(phi, elements, cfg.radius, cfg.threads)
    out = {"automorphism": phi.name, "partition": partition.to_json()}
    if respects_delta(phi):
        count, values = modulus_class_count(phi, elements)
        out["modulus_classes"] = {"count": count,
                                  "values": [modulus_json(v) for v in values]}
    else:
        out["modulus_classes"] = None
    cert = rinfty_certificate(g, phi)
    out["certificate"] = cert.to_json()
    out["note"] = (f"classes not merged are distinct at radius {cfg.radius} "
                   "only, unless their moduli differ")
    return out


def cmd_certify(cfg):
    g = _load_graph(cfg)
    phi = _load_aut(cfg, g)
    return {"automorphism": phi.name, "certificate": rinfty_certificate(g, phi).to_json()}


def cmd_ses_check(cfg):
    g = _load_graph(cfg)
    q = free_quotient(g)
    phi = _load_aut(cfg, g)
    report = projection_soundness(q, phi, cfg.samples, cfg.seed, cfg.radius)
    out = {"automorphism": phi.name, "rank": q.rank, **report.to_json()}
    out["note"] = ("only the direction G -> free quotient is checked; the "
                   "finite-quotient case never arises here")
    return out


def cmd_conj_growth(cfg):
    g = _load_graph(cfg)
    return conjugates_in_ball(_element(cfg, g), cfg.radius, cfg.threads).to_json()


COMMANDS = {
    "classify": cmd_classify, "nf": cmd_nf, "tl": cmd_tl,
    "commens": cmd_commens, "modulus": cmd_modulus, "twisted": cmd_twisted,
    "certify": cmd_certify, "ses-check": cmd_ses_check,
    "conj-growth": cmd_conj_growth,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--radius", type=int, default=3)
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--max-ball", type=int, default=limits.DEFAULT_MAX_BALL)
    common.add_argument("--max-digits", type=int, default=None,
                        help="exponent digit cap (env GBSKIT_MAX_DIGITS)")

    parser = argparse.ArgumentParser(prog="gbskit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("classify", parents=[common], help="quasi-isometry class")
    p.add_argument("graph")
    for name, helptext in (("nf", "canonical form"), ("tl", "translation length"),
                           ("commens", "commensuration exponents"),
                           ("modulus", "modular homomorphism"),
                           ("conj-growth", "conjugates in growing balls")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("graph")
        p.add_argument("word")
    p = sub.add_parser("twisted", parents=[common], help="twisted orbit merging")
    p.add_argument("graph")
    p.add_argument("--automorphism", "-a")
    p.add_argument("--words", "-w", required=True)
    p = sub.add_parser("certify", parents=[common], help="R-infinity certificate")
    p.add_argument("graph")
    p.add_argument("--automorphism", "-a")
    p = sub.add_parser("ses-check", parents=[common], help="free-quotient projection check")
    p.add_argument("graph")
    p.add_argument("--automorphism", "-a")
    return parser


def _text(obj, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        if set(obj) == {"num", "den"}:
            return [pad + (obj["num"] if obj["den"] == "1" else f"{obj['num']}/{obj['den']}")]
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            sub = _text(v, indent + 1)
            lines.append(pad + "- " + sub[0].strip())
            lines += sub[1:]
    else:
        lines.append(pad + str(obj))
    return lines


def render(obj, fmt: str) -> str:
    if fmt == "text":
        return "\n".join(_text(obj))
    return json.dumps(obj, indent=2, ensure_ascii=False)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(ns)
    except ValueError as exc:
        print(f"gbskit: {exc}", file=sys.stderr)
        return 2
    try:
        with limits.limits(max_ball=cfg.max_ball, max_digits=cfg.max_digits):
            result = COMMANDS[cfg.subcommand](cfg)
    except GbsError as exc:
        print(f"gbskit {cfg.subcommand}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    print(render(result, cfg.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
