from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from colortoric.lattice import HexTorus, LIGHT, DARK, cc_loop_name, cc_stabilizers, tc_stabilizers, require_admissible
from colortoric.pauli import PauliString, StabilizerGroup, product
from .hamiltonian import HamiltonianSpec

logger = logging.getLogger(__name__)


@dataclass
class Syndrome:
    """
    Terms of a Hamiltonian that anticommute with an operator.
    """
    indices: List[int]
    labels: List[str]

    def __len__(self):
        return len(self.indices)

    def to_dict(self):
        return {"indices": self.indices, "labels": self.labels}


def syndrome(h: HamiltonianSpec, p: PauliString) -> Syndrome:
    assert p.is_hermitian(), "`p` must be Hermitian."

    idx = [i for i, (_, op) in enumerate(h.terms) if not op.commutes(p)]
    return Syndrome(idx, [h.labels[i] for i in idx])


def anyon_pairs(t: HexTorus, qubit: int) -> Dict[str, Syndrome]:
    """
    Syndromes left by a single-qubit X or Z error in both models. In the toric code an error creates a pair
    of anyons; in the color code it flips the three plaquettes around the qubit.
    """
    from .hamiltonian import tc_hamiltonian, cc_hamiltonian

    tc, cc = tc_hamiltonian(t), cc_hamiltonian(t)
    out = {}
    for kind in ("X", "Z"):
        p = PauliString.single(t.n_qubits, qubit, kind)
        out[f"tc_{kind.lower()}"] = syndrome(tc, p)
        out[f"cc_{kind.lower()}"] = syndrome(cc, p)

    return out


def loop_operator(t: HexTorus, name: str) -> PauliString:
    return t.loops[name].operator()


def cc_group(t: HexTorus) -> StabilizerGroup:
    return StabilizerGroup.from_generators(cc_stabilizers(t), reduce = True)


def tc_group(t: HexTorus) -> StabilizerGroup:
    return StabilizerGroup.from_generators(tc_stabilizers(t), reduce = True)


@dataclass
class HomologyReport:
    """
    Membership (`+1`, `-1` or `None`) of colored-loop products in the two stabilizer groups.
    """
    zz_in_tc: Optional[int]
    zz_in_cc: Optional[int]
    xx_in_tc: Optional[int]
    rgb_in_cc: Dict[int, Optional[int]] = field(default_factory = dict)
    row_products: Dict[str, bool] = field(default_factory = dict)

    @property
    def passed(self) -> bool:
        return self.zz_in_tc == 1 and self.zz_in_cc is None and self.xx_in_tc == 1 and \
            all(v is not None for v in self.rgb_in_cc.values()) and all(self.row_products.values())

    def to_dict(self):
        return {
            "zz_in_tc": self.zz_in_tc,
            "zz_in_cc": self.zz_in_cc,
            "xx_in_tc": self.xx_in_tc,
            "rgb_in_cc": {str(k): v for k, v in self.rgb_in_cc.items()},
            "row_products": self.row_products,
            "passed": self.passed
        }


def homology_check(t: HexTorus) -> HomologyReport:
    """
    The red and blue loops along the rows fuse into TC stabilizers but not into CC stabilizers, while the
    three colored loops of either direction together are a CC stabilizer product.
    """
    require_admissible(t)
    cc, tc = cc_group(t), tc_group(t)

    zz = loop_operator(t, cc_loop_name("Z", 0, 0)) * loop_operator(t, cc_loop_name("Z", 0, 2))
    xx = loop_operator(t, cc_loop_name("X", 0, 0)) * loop_operator(t, cc_loop_name("X", 0, 2))

    rgb = {}
    for direction in (0, 1):
        ops = [loop_operator(t, cc_loop_name("Z", direction, color)) for color in range(3)]
        rgb[direction] = cc.member_with_sign(product(ops))

    row_products = {}
    for shade in (LIGHT, DARK):
        for row in range(t.n_rows):
            row_products[f"{shade}:{row}"] = row_operator_in_logical_class(t, row, shade, cc)

    report = HomologyReport(
        zz_in_tc = tc.member_with_sign(zz),
        zz_in_cc = cc.member_with_sign(zz),
        xx_in_tc = tc.member_with_sign(xx),
        rgb_in_cc = rgb,
        row_products = row_products
    )

    logger.info(f"Homology check on {t}: {report.to_dict()}.")
    return report


def row_operator(t: HexTorus, row: int, shade: str) -> PauliString:
    """
    Product of the TC terms of one shade along one row (Z-type for light, X-type for dark).
    """
    if shade not in (LIGHT, DARK):
        raise ValueError(f"Unknown shade `{shade}`.")
    if not (0 <= row < t.n_rows):
        raise IndexError(f"Row `{row}` out of range for {t.n_rows} rows.")

    rings = t.light_rings if shade == LIGHT else t.dark_rings
    return product([t.trapezoid_operator(i) for i in rings[row].sites])


def row_string_colors(t: HexTorus, row: int, shade: str) -> List[int]:
    """
    Colors of the two hexagon rows whose loops multiply into the row operator: the two rows after a light row,
    the two rows before a dark row.
    """
    offsets = (1, 2) if shade == LIGHT else (-1, -2)
    return [t.colors[t.hexagon_index(row + d, 0)] for d in offsets]


def row_operator_in_logical_class(t: HexTorus, row: int, shade: str, cc: Optional[StabilizerGroup] = None) -> bool:
    """
    Whether the row operator equals the product of the two colored loops along the rows, up to CC stabilizers.
    """
    if cc is None:
        cc = cc_group(t)

    pauli = "Z" if shade == LIGHT else "X"
    colors = row_string_colors(t, row, shade)
    target = product([loop_operator(t, cc_loop_name(pauli, 0, c)) for c in colors])
    return cc.member_with_sign(row_operator(t, row, shade) * target) == 1
