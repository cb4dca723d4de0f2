from __future__ import annotations

import logging
import numpy as np
import networkx as nx
from typing import Dict, List, Optional, Sequence, Tuple

from colortoric.errors import RoutingFailed, DoesNotFit
from colortoric.pauli import PauliString, StabilizerGroup
from colortoric.utils.gf2 import solve_gf2
from .torus import HexTorus, Point, SUPERLATTICE_STEPS, COLOR_NAMES, LIGHT

logger = logging.getLogger(__name__)

CC_COLORED = "cc_colored"
TC_NONCONTRACTIBLE = "tc_noncontractible"
WILSON_RECTANGLE = "wilson_rectangle"


class LoopSpec(object):
    """
    A closed string operator: pure `pauli`-type on `qubits`.

    :param name: key under which the loop is stored on the torus
    :type name: str

    :param kind: one of `cc_colored`, `tc_noncontractible`, `wilson_rectangle`
    :type kind: str

    :param metadata: color / direction for routed loops; height, width, anchor and enclosed light trapezoids
                     for Wilson rectangles
    :type metadata: dict
    """

    def __init__(self, name: str, kind: str, pauli: str, qubits: Sequence[int], n_qubits: int, **metadata):
        assert kind in (CC_COLORED, TC_NONCONTRACTIBLE, WILSON_RECTANGLE), f"Unknown loop kind `{kind}`."
        assert pauli in ("X", "Z"), f"Unknown Pauli type `{pauli}`."

        self.name = name
        self.kind = kind
        self.pauli = pauli
        self.qubits = list(qubits)
        self.n_qubits = n_qubits
        self.metadata = metadata

    def operator(self) -> PauliString:
        return PauliString.from_support(self.n_qubits, self.qubits, self.pauli)

    def __len__(self):
        return len(self.qubits)

    def __repr__(self):
        return f"LoopSpec({self.name}, {self.kind}, {self.pauli}, weight={len(self.qubits)})"


def cc_loop_name(pauli: str, direction: int, color: int) -> str:
    return f"cc_{pauli.lower()}_{direction}_{COLOR_NAMES[color]}"


def tc_loop_name(pauli: str, direction: int) -> str:
    return f"tc_{pauli.lower()}_{direction}"


def _toggle(order: List[int], q: int):
    if q in order:
        order.remove(q)
    else:
        order.append(q)


def _source_row(t: HexTorus, color: int) -> int:
    rows = sorted({t.row_of(h) for h in range(t.num_hexagons) if t.colors[h] == color})
    # Blue strings sit on the last blue row so that light and dark row products pair red with blue
    return rows[-1] if color == 2 else rows[0]


def route_colored_string(t: HexTorus, color: int, direction: int) -> Tuple[List[int], List[Point]]:
    """
    Shortest closed walk through hexagons of `color` winding once around the torus period `direction`
    (0: along the rows, 1: across them). Each step crosses one honeycomb edge of that color and contributes its
    two endpoint qubits; returns the qubit string and the lifted walk.
    """
    assert direction in (0, 1), f"Unknown direction `{direction}`."

    src_row = _source_row(t, color)
    src = (src_row, 0)
    period = (t.n_cols, t.n_cols) if direction == 0 else (t.n_rows, 0)
    dst = (src[0] + period[0], src[1] + period[1])

    margin = 3
    span = t.n_rows + t.n_cols
    g = nx.Graph()
    for a in range(src[0] - margin, src[0] + span + margin + 1):
        for b in range(src[1] - span - margin, src[1] + span + margin + 1):
            if t.colors[t.point_hexagon((a, b))] != color:
                continue
            g.add_node((a, b))
            for step in SUPERLATTICE_STEPS[:3]:
                nb = (a + step[0], b + step[1])
                if nb in g:
                    g.add_edge((a, b), nb)
                prev = (a - step[0], b - step[1])
                if prev in g:
                    g.add_edge(prev, (a, b))

    try:
        walk = nx.shortest_path(g, src, dst)
    except (nx.NetworkXNoPath, nx.NodeNotFound):
        raise RoutingFailed(f"No {COLOR_NAMES[color]} walk along period {direction}.",
                            kind = CC_COLORED, color = color, direction = direction)

    qubits: List[int] = []
    for p, p_next in zip(walk[:-1], walk[1:]):
        step = (p_next[0] - p[0], p_next[1] - p[1])
        for q in t.edge_qubits(p, step):
            _toggle(qubits, q)

    return qubits, walk


def _commutes_with_all(op: PauliString, others: Sequence[PauliString]) -> bool:
    return all(op.commutes(o) for o in others)


def cc_stabilizers(t: HexTorus) -> List[PauliString]:
    return [t.hexagon_operator(h, kind) for kind in ("X", "Z") for h in range(t.num_hexagons)]


def tc_stabilizers(t: HexTorus) -> List[PauliString]:
    return [t.trapezoid_operator(i) for i in t.light_ids + t.dark_ids]


def _solve_logical(t: HexTorus, even_ids: Sequence[int], odd_support: Sequence[int]) -> Optional[List[int]]:
    """
    A qubit set with even overlap on every trapezoid in `even_ids` and odd overlap with `odd_support`.
    """
    mat = np.zeros([len(even_ids) + 1, t.n_qubits], dtype = np.uint8)
    for row, i in enumerate(even_ids):
        mat[row, list(t.trapezoids[i].qubits)] = 1
    mat[-1, list(odd_support)] = 1

    rhs = np.zeros([mat.shape[0]], dtype = np.uint8)
    rhs[-1] = 1

    x = solve_gf2(mat, rhs)
    return None if x is None else np.nonzero(x)[0].tolist()


def noncontractible_loops(t: HexTorus) -> List[LoopSpec]:
    """
    Route the colored CC loops (both Pauli types, all colors, both directions) and the TC loops, check their
    commutation requirements and store them in `t.loops`.
    """
    assert t.colored and t.shaded, "Loops need a colored and partitioned torus."

    cc_stabs = cc_stabilizers(t)
    tc_stabs = tc_stabilizers(t)

    loops = []
    strings = {}
    for direction in (0, 1):
        for color in range(3):
            qubits, walk = route_colored_string(t, color, direction)
            strings[(color, direction)] = qubits
            for pauli in ("Z", "X"):
                loop = LoopSpec(cc_loop_name(pauli, direction, color), CC_COLORED, pauli, qubits, t.n_qubits,
                                color = color, direction = direction, walk = [list(p) for p in walk])
                if not _commutes_with_all(loop.operator(), cc_stabs):
                    raise RoutingFailed(f"Loop `{loop.name}` does not commute with the CC stabilizers.",
                                        kind = CC_COLORED, color = color, direction = direction)
                loops.append(loop)

    # Along the rows the red string commutes with every CC term and every TC term
    row_string = strings[(0, 0)]
    tc_z0 = LoopSpec(tc_loop_name("Z", 0), TC_NONCONTRACTIBLE, "Z", row_string, t.n_qubits, direction = 0)
    tc_x0 = LoopSpec(tc_loop_name("X", 0), TC_NONCONTRACTIBLE, "X", row_string, t.n_qubits, direction = 0)
    for loop in (tc_z0, tc_x0):
        if not _commutes_with_all(loop.operator(), tc_stabs + cc_stabs):
            raise RoutingFailed(f"Loop `{loop.name}` does not commute with all TC and CC terms.",
                                kind = TC_NONCONTRACTIBLE, direction = 0)

    z1 = _solve_logical(t, t.dark_ids, row_string)
    x1 = _solve_logical(t, t.light_ids, row_string)
    if z1 is None or x1 is None:
        raise RoutingFailed("No TC logical across the rows.", kind = TC_NONCONTRACTIBLE, direction = 1)

    tc_z1 = LoopSpec(tc_loop_name("Z", 1), TC_NONCONTRACTIBLE, "Z", z1, t.n_qubits, direction = 1)
    tc_x1 = LoopSpec(tc_loop_name("X", 1), TC_NONCONTRACTIBLE, "X", x1, t.n_qubits, direction = 1)
    loops.extend([tc_z0, tc_x0, tc_z1, tc_x1])

    t.loops = {loop.name: loop for loop in loops}
    logger.info(f"Routed {len(loops)} loops on {t}.")
    return loops


def tc_membership(t: HexTorus, loop: LoopSpec, group: Optional[StabilizerGroup] = None) -> Optional[int]:
    """
    Sign (`+1`/`-1`) with which the loop operator belongs to the full TC stabilizer group, `None` if it is
    not a product of TC terms.
    """
    if group is None:
        group = StabilizerGroup.from_generators(tc_stabilizers(t), reduce = True)

    return group.member_with_sign(loop.operator())


def wilson_rectangle(t: HexTorus, height: int, width: int, anchor: int = 0) -> LoopSpec:
    """
    The Z-string bounding a `height x width` block of light trapezoids whose top-left corner is the light
    trapezoid `anchor`. The block may not wrap around the torus.
    """
    assert t.shaded, "Wilson rectangles need a partitioned torus."

    if not (0 <= height < t.n_rows and 0 <= width < t.n_cols):
        raise DoesNotFit(f"A {height}x{width} rectangle does not fit the {t.n_rows}x{t.n_cols} torus without wrapping.",
                         height = height, width = width)

    trap = t.trapezoids[anchor]
    assert trap.shade == LIGHT, f"Anchor `{anchor}` is not a light trapezoid."

    enclosed = []
    for i in range(height):
        ring = t.light_rings[(trap.row + i) % t.n_rows]
        for j in range(width):
            enclosed.append(ring.sites[(trap.position + j) % t.n_cols])

    qubits: List[int] = []
    for i in enclosed:
        for q in t.trapezoids[i].qubits:
            _toggle(qubits, q)

    loop = LoopSpec(f"wilson_{height}x{width}@{anchor}", WILSON_RECTANGLE, "Z", qubits, t.n_qubits,
                    height = height, width = width, anchor = anchor, enclosed = enclosed)

    if len(enclosed) > 0:
        assert len(qubits) > 0, "Wilson loop has empty support."
        assert tc_membership(t, loop) == 1, "Wilson loop is not a product of TC terms."

    return loop


def wilson_rectangles(t: HexTorus, anchor: int = 0) -> List[LoopSpec]:
    """
    Every non-empty rectangle that fits the torus, anchored at the same light trapezoid.
    """
    return [wilson_rectangle(t, h, w, anchor) for h in range(1, t.n_rows) for w in range(1, t.n_cols)]
