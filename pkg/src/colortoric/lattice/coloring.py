from __future__ import annotations

import logging
import networkx as nx
from typing import Dict, List, Optional

from colortoric.errors import NotThreeColorable
from .torus import HexTorus

logger = logging.getLogger(__name__)


def adjacency_graph(t: HexTorus) -> nx.MultiGraph:
    """
    Hexagon adjacency on the torus. Kept as a multigraph so that wrap-around self-adjacency stays visible.
    """
    g = nx.MultiGraph()
    g.add_nodes_from(range(t.num_hexagons))
    for h in range(t.num_hexagons):
        for nb in t.neighbors(h):
            if nb >= h:
                g.add_edge(h, nb)

    return g


def _backtrack_coloring(g: nx.MultiGraph, num_colors: int = 3) -> Optional[Dict[int, int]]:
    """
    Lexicographically smallest proper coloring in node order, or `None` if there is none.
    """
    if any(u == v for u, v in g.edges()):
        return None

    order = sorted(g.nodes())
    colors: Dict[int, int] = {}

    def assign(i: int) -> bool:
        if i == len(order):
            return True

        node = order[i]
        used = {colors[nb] for nb in g.neighbors(node) if nb in colors}
        for col in range(num_colors):
            if col in used:
                continue
            colors[node] = col
            if assign(i + 1):
                return True
            del colors[node]

        return False

    return colors if assign(0) else None


def three_color(t: HexTorus) -> HexTorus:
    """
    Properly 3-color the hexagons (color 0 is red, 1 green, 2 blue) and color every honeycomb edge with the
    color of the two hexagons it connects.
    """
    coloring = _backtrack_coloring(adjacency_graph(t))
    if coloring is None:
        raise NotThreeColorable(f"The {t.n_rows}x{t.n_cols} torus admits no proper 3-coloring.",
                                n_rows = t.n_rows, n_cols = t.n_cols)

    t.colors = [coloring[h] for h in range(t.num_hexagons)]
    t.edges = colored_edges(t)

    logger.info(f"Colored {t}: {[t.colors.count(c) for c in range(3)]} hexagons per color.")
    return t


def colored_edges(t: HexTorus) -> List[tuple]:
    """
    Honeycomb edges as `(q1, q2, color)` with `q1 < q2`.
    """
    seen = set()
    edges = []
    for verts in t.hexagons:
        for k in range(6):
            q1, q2 = sorted((verts[k], verts[(k + 1) % 6]))
            if (q1, q2) in seen:
                continue
            seen.add((q1, q2))

            hex1, hex2 = set(t.qubit_hexagons(q1)), set(t.qubit_hexagons(q2))
            ends = hex1 ^ hex2
            end_colors = {t.colors[h] for h in ends}
            assert len(end_colors) == 1, f"Edge ({q1}, {q2}) connects hexagons of different colors."

            edges.append((q1, q2, end_colors.pop()))

    return edges


def is_proper(t: HexTorus) -> bool:
    if t.colors is None:
        return False

    for h in range(t.num_hexagons):
        for nb in t.neighbors(h):
            if t.colors[nb] == t.colors[h]:
                return False

    return True
