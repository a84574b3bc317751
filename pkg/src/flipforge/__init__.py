"""Edge-coloured flip graphs: constructions, exact verification, classification."""

from __future__ import annotations

from .classifier import SequenceVerdict, classify, weak_feasibility
from .constructions import (
    ConstructionCertificate,
    ConstructionError,
    construct_3flip,
    construct_cayley_tflip,
    construct_gap,
    construct_interval,
    construct_interval_large,
    construct_rb,
    construct_rb_optimized,
    construct_rc_constant,
    construct_weak,
    construct_weak_23,
)
from .factors import constant_partition, one_factorization, spec_guaranteed
from .graph import ColouredGraph, GraphError
from .io import GraphFormatError, load_graph, save_graph
from .packing import perfect_tree_line_count, random_regular_with_girth, sauer_spencer_pack
from .products import cartesian_product, ccp_flip_assemble, compose_flip, strong_product
from .verification import FlipReport, triangle_census, verify_flip, verify_t_flip

__version__ = "0.1.0"
