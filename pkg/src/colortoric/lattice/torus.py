from __future__ import annotations

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from colortoric.pauli import PauliString

logger = logging.getLogger(__name__)

Point = Tuple[int, int]

# Hexagon centres form a triangular lattice in axial coordinates; neighbours in angular order
NEIGHBOR_STEPS: Tuple[Point, ...] = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))

# Displacements between nearest hexagons of the same color
SUPERLATTICE_STEPS: Tuple[Point, ...] = ((1, 1), (2, -1), (-1, 2), (-1, -1), (-2, 1), (1, -2))

COLOR_NAMES = ("red", "green", "blue")

LIGHT = "light"
DARK = "dark"


def _add(p: Point, q: Point) -> Point:
    return (p[0] + q[0], p[1] + q[1])


class Trapezoid(object):
    """
    Half of a hexagon: four qubits, a shade, and its place in the ring of its row.
    """

    __slots__ = ("qubits", "shade", "hexagon", "row", "position")

    def __init__(self, qubits: Sequence[int], shade: str, hexagon: int, row: int = -1, position: int = -1):
        assert shade in (LIGHT, DARK), f"Unknown shade `{shade}`."

        self.qubits = tuple(qubits)
        self.shade = shade
        self.hexagon = hexagon
        self.row = row
        self.position = position

    def __repr__(self):
        return f"Trapezoid({self.shade}, row={self.row}, position={self.position}, qubits={list(self.qubits)})"


class Ring(object):
    """
    Trapezoids of one row and one shade in cyclic order; `bonds[i]` is the hexagon whose CC term couples
    `sites[i]` and `sites[(i + 1) % len]`.
    """

    __slots__ = ("shade", "row", "sites", "bonds")

    def __init__(self, shade: str, row: int, sites: Sequence[int], bonds: Sequence[int]):
        assert len(sites) == len(bonds), "A ring has as many bonds as sites."

        self.shade = shade
        self.row = row
        self.sites = list(sites)
        self.bonds = list(bonds)

    def __len__(self):
        return len(self.sites)

    def __repr__(self):
        return f"Ring({self.shade}, row={self.row}, sites={self.sites}, bonds={self.bonds})"


class HexTorus(object):
    """
    Periodic honeycomb lattice with `n_rows x n_cols` hexagons and `2 * n_rows * n_cols` qubits.

    Hexagon `(r, c)` sits at axial position `(r + c, c)`; the torus identifies points that differ by
    `(n_cols, n_cols)` or `(n_rows, 0)`, so rows run along `(1, 1)`. Qubits are the triangles of three mutually
    adjacent hexagons: `U(P) = {P, P+(1,0), P+(0,1)}` is qubit `2h` and `D(P) = {P, P+(1,0), P+(1,-1)}` is qubit
    `2h+1`, where `h = r * n_cols + c` is the index of hexagon `P`.

    The coloring, trapezoid partition and loops are attached by `three_color`, `partition_trapezoids` and
    `noncontractible_loops` respectively.
    """

    def __init__(self, n_rows: int, n_cols: int):
        assert n_rows >= 2 and n_cols >= 2, "A torus needs at least 2 rows and 2 columns."

        self.n_rows = n_rows
        self.n_cols = n_cols
        self.num_hexagons = n_rows * n_cols
        self.n_qubits = 2 * self.num_hexagons

        # Six qubits per hexagon in angular order
        self.hexagons: List[Tuple[int, ...]] = [self._hexagon_vertices(self.hexagon_point(h)) for h in range(self.num_hexagons)]

        self.colors: Optional[List[int]] = None
        self.edges: Optional[List[Tuple[int, int, int]]] = None

        self.trapezoids: Optional[List[Trapezoid]] = None
        self.light_ids: List[int] = []
        self.dark_ids: List[int] = []
        self.light_rings: List[Ring] = []
        self.dark_rings: List[Ring] = []
        self.split: Optional[Dict[str, int]] = None

        self.loops: Dict[str, "LoopSpec"] = {}

    ## Coordinates ##

    def hexagon_index(self, r: int, c: int) -> int:
        return (r % self.n_rows) * self.n_cols + (c % self.n_cols)

    def hexagon_rowcol(self, h: int) -> Tuple[int, int]:
        return h // self.n_cols, h % self.n_cols

    def hexagon_point(self, h: int) -> Point:
        r, c = self.hexagon_rowcol(h)
        return (r + c, c)

    def point_rowcol(self, p: Point) -> Tuple[int, int]:
        a, b = p
        return (a - b) % self.n_rows, b % self.n_cols

    def point_hexagon(self, p: Point) -> int:
        return self.hexagon_index(*self.point_rowcol(p))

    def row_of(self, h: int) -> int:
        return h // self.n_cols

    def triangle_qubit(self, tri: Sequence[Point]) -> int:
        """
        Qubit index of the triangle formed by three mutually adjacent hexagon centres in the plane.
        """
        tri_set = set(tri)
        for p in tri:
            if tri_set == {p, _add(p, (1, 0)), _add(p, (0, 1))}:
                return 2 * self.point_hexagon(p)
            if tri_set == {p, _add(p, (1, 0)), _add(p, (1, -1))}:
                return 2 * self.point_hexagon(p) + 1

        raise ValueError(f"Points `{tri}` do not form a lattice triangle.")

    def qubit_triangle(self, q: int) -> Tuple[Point, Point, Point]:
        p = self.hexagon_point(q // 2)
        if q % 2 == 0:
            return (p, _add(p, (1, 0)), _add(p, (0, 1)))
        return (p, _add(p, (1, 0)), _add(p, (1, -1)))

    def qubit_hexagons(self, q: int) -> Tuple[int, int, int]:
        return tuple(self.point_hexagon(p) for p in self.qubit_triangle(q))

    def _hexagon_vertices(self, p: Point) -> Tuple[int, ...]:
        verts = []
        for k in range(6):
            s1, s2 = NEIGHBOR_STEPS[k], NEIGHBOR_STEPS[(k + 1) % 6]
            verts.append(self.triangle_qubit((p, _add(p, s1), _add(p, s2))))

        return tuple(verts)

    def neighbors(self, h: int) -> List[int]:
        p = self.hexagon_point(h)
        return [self.point_hexagon(_add(p, s)) for s in NEIGHBOR_STEPS]

    def edge_qubits(self, p: Point, step: Point) -> Tuple[int, int]:
        """
        The honeycomb edge crossed when moving between same-color hexagons `p` and `p + step`.
        """
        assert step in SUPERLATTICE_STEPS, f"`{step}` is not a superlattice step."

        q = _add(p, step)
        common = [_add(p, s) for s in NEIGHBOR_STEPS if (q[0] - p[0] - s[0], q[1] - p[1] - s[1]) in NEIGHBOR_STEPS]
        assert len(common) == 2

        return self.triangle_qubit((p, common[0], common[1])), self.triangle_qubit((q, common[0], common[1]))

    ## Operators ##

    def hexagon_operator(self, h: int, kind: str) -> PauliString:
        return PauliString.from_support(self.n_qubits, self.hexagons[h], kind)

    def trapezoid_operator(self, i: int) -> PauliString:
        trap = self.trapezoids[i]
        return PauliString.from_support(self.n_qubits, trap.qubits, "Z" if trap.shade == LIGHT else "X")

    def light_operator(self, row: int, position: int) -> PauliString:
        return self.trapezoid_operator(self.light_rings[row].sites[position])

    def dark_operator(self, row: int, position: int) -> PauliString:
        return self.trapezoid_operator(self.dark_rings[row].sites[position])

    @property
    def colored(self) -> bool:
        return self.colors is not None

    @property
    def shaded(self) -> bool:
        return self.trapezoids is not None

    @property
    def dims(self) -> Tuple[int, int]:
        return self.n_rows, self.n_cols

    def __repr__(self):
        return f"HexTorus(n_rows={self.n_rows}, n_cols={self.n_cols}, n_qubits={self.n_qubits})"


def build_hex_torus(n_rows: int, n_cols: int) -> HexTorus:
    """
    Construct the bare periodic honeycomb (no coloring, partition or loops yet).
    """
    t = HexTorus(n_rows, n_cols)
    logger.debug(f"Built {t}.")
    return t
