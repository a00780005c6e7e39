"""Thompson's groups F and T: tree pair diagrams, normal forms, word metrics and torsion.

Elements are reduced marked tree pair diagrams (:class:`MarkedPair`);
words use the infinite generators ``x_i`` and ``c_i`` and are applied
right to left.
"""

from .dyadic import Dyadic, PLMap, c_map, compose, evaluate, parse_dyadic, two_adic_distance, x_map
from .tree import Tree, all_right, complete, leaf_exponents, minimal_common_expansion, parse_tree, serialize_tree
from .diagram import (
    MarkedPair,
    PcqForm,
    equals,
    generator_diagram,
    identity,
    invert,
    multiply,
    pcq_factorization,
    power,
    reduce,
    to_plmap,
    word_to_diagram,
)
from .rewrite import Word, normal_form, normal_form_f, parse_word, pump
from .metric import D, Rotation, bfs_length, distortion_report, n_carets, rotation_element, rotation_qie_report
from .torsion import balanced_form, conjugator, order

__version__ = "0.1.0"
