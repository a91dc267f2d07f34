"""Generalized Baumslag-Solitar groups: word problem, Bass-Serre geometry,
the modular homomorphism, quasi-isometry classes and twisted conjugacy."""
import sys

from .classifier import classification_report, qi_class, reduce_graph
from .errors import GbsError
from .graph import Edge, GbsGraph, bs_graph, parse_graph, serialize_graph, spanning_tree, validate_graph
from .modular import delta_image_generators, is_unimodular, modulus, respects_delta
from .normal_form import canonical_form, cyclic_reduce, equal, is_identity, random_word, reduce
from .tree_geometry import classify_element, find_commensuration, translation_length
from .twisted import (
    apply,
    identity_automorphism,
    merge_classes_in_ball,
    modulus_class_count,
    parse_automorphism,
    rinfty_certificate,
    twisted_conjugate,
    validate_automorphism,
)
from .words import PathWord, UserWord, lift_user_word, parse_path_word, parse_word, presentation

# exponents grow multiplicatively; the digit cap in limits.py is the real guard
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

__version__ = "0.1.0"
