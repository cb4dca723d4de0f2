from __future__ import annotations

import logging
import networkx as nx
from typing import Dict, List, Optional, Sequence, Tuple

from colortoric.errors import ShadingInfeasible
from .torus import HexTorus, Trapezoid, Ring, LIGHT, DARK

logger = logging.getLogger(__name__)


def _halves(orientation: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """
    Vertex slots of the two halves obtained by cutting a hexagon along the diagonal through slots
    `orientation` and `orientation + 3`; the two halves share those two slots.
    """
    first = tuple((orientation + k) % 6 for k in range(4))
    second = tuple((orientation + 3 + k) % 6 for k in range(4))
    return first, second


def split_candidates() -> List[Dict[str, int]]:
    cands = []
    for orientation in range(3):
        for light_half in (1, 0):
            cands.append({"orientation": orientation, "light_half": light_half})

    return cands


def _odd_overlap(a: Sequence[int], b: Sequence[int]) -> bool:
    return len(set(a) & set(b)) % 2 == 1


def _incidence_ok(t: HexTorus, traps: List[Trapezoid]) -> bool:
    counts = {LIGHT: [0] * t.n_qubits, DARK: [0] * t.n_qubits}
    for trap in traps:
        if len(set(trap.qubits)) != 4:
            return False
        for q in trap.qubits:
            counts[trap.shade][q] += 1

    return all(c == 2 for c in counts[LIGHT]) and all(c == 2 for c in counts[DARK])


def _build_rings(t: HexTorus, traps: List[Trapezoid], shade: str) -> Optional[List[Ring]]:
    """
    Couple the trapezoids of `shade` through the CC terms of the opposite Pauli type (X-type hexagon terms for
    light trapezoids, Z-type for dark) and check that every hexagon row yields one ring of `n_cols` sites.
    Returns `None` if the row property fails.
    """
    ids = [i for i, trap in enumerate(traps) if trap.shade == shade]

    # Hexagon -> the two trapezoids its term anticommutes with
    coupled: Dict[int, List[int]] = {}
    for h in range(t.num_hexagons):
        hits = [i for i in ids if _odd_overlap(t.hexagons[h], traps[i].qubits)]
        if len(hits) != 2:
            return None
        coupled[h] = hits

    rows: Dict[int, int] = {}
    for h, hits in coupled.items():
        r = t.row_of(h)
        for i in hits:
            if rows.setdefault(i, r) != r:
                return None

    rings = []
    for r in range(t.n_rows):
        g = nx.MultiGraph()
        sites = [i for i in ids if rows.get(i) == r]
        g.add_nodes_from(sites)
        for h in range(r * t.n_cols, (r + 1) * t.n_cols):
            g.add_edge(coupled[h][0], coupled[h][1], hexagon = h)

        if len(sites) != t.n_cols or g.number_of_edges() != t.n_cols:
            return None
        if not nx.is_connected(g) or any(d != 2 for _, d in g.degree()):
            return None

        # Walk the cycle starting from the site with the smallest hexagon index
        start = min(sites, key = lambda i: traps[i].hexagon)
        order, bonds = [], []
        for u, v, key in nx.eulerian_circuit(g, source = start, keys = True):
            order.append(u)
            bonds.append(g.edges[u, v, key]["hexagon"])

        # Orient so that ring positions follow the hexagon columns
        if t.n_cols > 2 and traps[order[1]].hexagon > traps[order[-1]].hexagon:
            order = [order[0]] + order[1:][::-1]
            bonds = bonds[::-1]

        rings.append(Ring(shade, r, order, bonds))

    return rings


def _tc_commuting(traps: List[Trapezoid]) -> bool:
    lights = [trap for trap in traps if trap.shade == LIGHT]
    darks = [trap for trap in traps if trap.shade == DARK]
    return all(not _odd_overlap(a.qubits, b.qubits) for a in lights for b in darks)


def try_split(t: HexTorus, orientation: int, light_half: int):
    halves = _halves(orientation)
    traps = []
    for h, verts in enumerate(t.hexagons):
        for k, half in enumerate(halves):
            shade = LIGHT if k == light_half else DARK
            traps.append(Trapezoid([verts[s] for s in half], shade, h))

    if not _incidence_ok(t, traps) or not _tc_commuting(traps):
        return None

    light_rings = _build_rings(t, traps, LIGHT)
    dark_rings = _build_rings(t, traps, DARK)
    if light_rings is None or dark_rings is None:
        return None

    return traps, light_rings, dark_rings


def partition_trapezoids(t: HexTorus) -> HexTorus:
    """
    Split every hexagon into a light and a dark trapezoid such that each X-type hexagon term anticommutes
    with exactly two light trapezoids, adjacent in the light ring of its own row (dually for Z-type terms and
    dark trapezoids). The candidates are tried in a fixed order and the first valid one is kept.
    """
    for cand in split_candidates():
        found = try_split(t, **cand)
        if found is None:
            logger.debug(f"Split {cand} rejected on {t}.")
            continue

        traps, light_rings, dark_rings = found
        _attach(t, traps, light_rings, dark_rings)
        t.split = dict(cand)

        logger.info(f"Partitioned {t} with split {cand}.")
        return t

    raise ShadingInfeasible(f"No trapezoid split of the {t.n_rows}x{t.n_cols} torus satisfies the row property.",
                            n_rows = t.n_rows, n_cols = t.n_cols)


def _attach(t: HexTorus, traps: List[Trapezoid], light_rings: List[Ring], dark_rings: List[Ring]):
    """
    Renumber trapezoids as all light ones (row-major in ring order) followed by all dark ones.
    """
    ordered = []
    renumber = {}
    for rings in (light_rings, dark_rings):
        for ring in rings:
            for pos, i in enumerate(ring.sites):
                trap = traps[i]
                renumber[i] = len(ordered)
                ordered.append(Trapezoid(trap.qubits, trap.shade, trap.hexagon, row = ring.row, position = pos))

    t.trapezoids = ordered
    t.light_ids = [i for i, trap in enumerate(ordered) if trap.shade == LIGHT]
    t.dark_ids = [i for i, trap in enumerate(ordered) if trap.shade == DARK]
    t.light_rings = [Ring(LIGHT, ring.row, [renumber[i] for i in ring.sites], ring.bonds) for ring in light_rings]
    t.dark_rings = [Ring(DARK, ring.row, [renumber[i] for i in ring.sites], ring.bonds) for ring in dark_rings]
