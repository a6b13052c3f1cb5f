"""Balloon layouts on uniform spokes and tree drawings with perfect angular
resolution."""

from .angles import (SpokeSet, is_well_separated, opening_angle, split_spokes,
                     uniform_spokes)
from .checker import (Report, Violation, check_drawing, check_layout,
                      contact_layer_bound, tiny_oracle)
from .formats import (ParseError, emit_instance, emit_json, emit_svg,
                      emit_tree, parse_instance, parse_json, parse_tree)
from .geometry import (KAPPA, Disk, alpha, compact_factor,
                       disks_interior_disjoint, point_segment_distance,
                       ray_point_distance, segment_clear_of_disk,
                       segments_properly_cross, wedge_center_distance)
from .layout import (Layer, Layout, Placement, greedy_balloon, greedy_one_free,
                     greedy_two_free, is_weakly_ordered, weakly_order)
from .treedraw import (Drawing, HeavyDecomposition, PathItem, RootedTree,
                       compose_path, draw_tree, heavy_decomposition)

__version__ = "0.1.0"

__all__ = [
    "SpokeSet", "uniform_spokes", "split_spokes", "opening_angle",
    "is_well_separated",
    "KAPPA", "Disk", "alpha", "wedge_center_distance", "compact_factor",
    "disks_interior_disjoint", "point_segment_distance", "ray_point_distance",
    "segment_clear_of_disk", "segments_properly_cross",
    "Layer", "Layout", "Placement", "greedy_balloon", "greedy_one_free",
    "greedy_two_free", "weakly_order", "is_weakly_ordered",
    "Report", "Violation", "check_layout", "check_drawing",
    "contact_layer_bound", "tiny_oracle",
    "RootedTree", "HeavyDecomposition", "Drawing", "PathItem",
    "heavy_decomposition", "draw_tree", "compose_path",
    "ParseError", "emit_json", "parse_json", "emit_svg", "emit_instance",
    "parse_instance", "emit_tree", "parse_tree",
    "__version__",
]
