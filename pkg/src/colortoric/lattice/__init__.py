from .torus import HexTorus, Trapezoid, Ring, build_hex_torus, COLOR_NAMES, LIGHT, DARK
from .coloring import three_color, adjacency_graph, is_proper
from .trapezoids import partition_trapezoids, split_candidates
from .loops import LoopSpec, noncontractible_loops, route_colored_string, wilson_rectangle, wilson_rectangles, tc_membership
from .loops import cc_loop_name, tc_loop_name, cc_stabilizers, tc_stabilizers, CC_COLORED, TC_NONCONTRACTIBLE, WILSON_RECTANGLE
from .validation import ValidationReport, CheckResult, validate, validate_dims, make_torus, require_admissible
