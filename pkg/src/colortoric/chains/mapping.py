from __future__ import annotations

import itertools
import logging
import networkx as nx
import numpy as np
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from colortoric.errors import AuditFailure
from colortoric.lattice import HexTorus, LIGHT, DARK, Ring, tc_loop_name, require_admissible
from colortoric.models import interpolate, loop_operator
from colortoric.pauli import PauliString, SectorAnalysis, SectorRule, analyze_sectors
from colortoric.spectra import phi_c_group, lowest_eigs, cluster_levels
from colortoric.utils.bitset import BitVector
from colortoric.utils.gf2 import solve_gf2
from colortoric.utils.tolerances import resolve
from .ensemble import ChainEnsemble, SectorKey, assemble_k_lowest

logger = logging.getLogger(__name__)

# Labels of the two TC loops that commute with every term
LOOP_Z = "i"
LOOP_X = "j"


def trapezoid_label(t: HexTorus, i: int) -> str:
    return f"B:{i}" if t.trapezoids[i].shade == LIGHT else f"A:{i}"


def measured_set(t: HexTorus) -> List[Tuple[str, PauliString]]:
    """
    All trapezoid terms plus `L_Z^0` and `L_x^0`: a commuting set of full rank whose joint sign sectors are
    one-dimensional.
    """
    measured = [(trapezoid_label(t, i), t.trapezoid_operator(i)) for i in t.light_ids + t.dark_ids]
    measured.append((LOOP_Z, loop_operator(t, tc_loop_name("Z", 0))))
    measured.append((LOOP_X, loop_operator(t, tc_loop_name("X", 0))))
    return measured


def cc_bond_graph(t: HexTorus) -> nx.MultiGraph:
    """
    Trapezoids joined by the CC terms that flip them. Every CC term flips exactly two trapezoid signs and
    neither loop sign, so each term is one edge, keyed by `(kind, hexagon)`.
    """
    traps = [(i, t.trapezoid_operator(i)) for i in range(len(t.trapezoids))]
    loops = [loop_operator(t, tc_loop_name(p, 0)) for p in ("Z", "X")]

    g = nx.MultiGraph()
    g.add_nodes_from(i for i, _ in traps)
    for kind in ("X", "Z"):
        for h in range(t.num_hexagons):
            op = t.hexagon_operator(h, kind)
            flipped = [i for i, trap in traps if not op.commutes(trap)]
            if len(flipped) != 2 or not all(op.commutes(l) for l in loops):
                raise AuditFailure(f"CC term `h{kind.lower()}` of hexagon {h} flips {flipped} instead of two trapezoids.",
                                   hexagon = h, kind = kind, flipped = flipped)
            g.add_edge(flipped[0], flipped[1], key = (kind, h), op = op)

    return g


def derive_rings(t: HexTorus, g: nx.MultiGraph) -> List[Ring]:
    """
    The connected components of the bond graph as ordered rings, light rows first. Each component must be a
    single cycle; its provenance is matched against the rows of the torus.
    """
    by_sites = {frozenset(r.sites): r for r in t.light_rings + t.dark_rings}

    rings = []
    for comp in nx.connected_components(g):
        sub = g.subgraph(comp)
        if any(d != 2 for _, d in sub.degree()):
            raise AuditFailure(f"Bond component {sorted(comp)} is not a cycle.", component = sorted(comp))

        start = min(comp)
        circuit = list(nx.eulerian_circuit(sub, source = start, keys = True))
        sites = [u for u, _, _ in circuit]
        bonds = [key[1] for _, _, key in circuit]

        ref = by_sites.get(frozenset(sites))
        if ref is None:
            raise AuditFailure(f"Bond component {sorted(comp)} is not a row of trapezoids.", component = sorted(comp))
        rings.append(Ring(ref.shade, ref.row, sites, bonds))

    rings.sort(key = lambda r: (0 if r.shade == LIGHT else 1, r.row))
    return rings


def _rule_over_rings(rule: SectorRule, rings: List[Ring], t: HexTorus) -> Tuple[List[int], int, int]:
    """
    Rewrite a rule over ring parities: `(ring indices, uses L_Z^0, uses L_x^0)`.
    """
    labels = set(rule.labels)
    members = []
    for idx, ring in enumerate(rings):
        ring_labels = {trapezoid_label(t, i) for i in ring.sites}
        inside = labels & ring_labels
        if len(inside) == 0:
            continue
        if inside != ring_labels:
            raise AuditFailure(f"Rule {rule.labels} splits ring {ring}.", rule = list(rule.labels))
        members.append(idx)
        labels -= ring_labels

    i_bit = int(LOOP_Z in labels)
    j_bit = int(LOOP_X in labels)
    labels -= {LOOP_Z, LOOP_X}
    assert len(labels) == 0, f"Unexpected labels {labels} in a rule."

    return members, i_bit, j_bit


@dataclass
class Orbit:
    """
    Image of the CC reference state under the Pauli `shift`: the sign pattern it flips on the rules, the
    resulting rule right-hand sides and the twist of every ring.
    """
    flips: Tuple[int, ...]
    rhs: Tuple[int, ...]
    twists: Tuple[int, ...]
    shift: PauliString = field(repr = False)

    def to_dict(self):
        return {"flips": list(self.flips), "rhs": list(self.rhs), "twists": list(self.twists)}


def _rule_products(analysis: SectorAnalysis, measured: Sequence[Tuple[str, PauliString]]) -> List[PauliString]:
    ops = dict(measured)
    n = measured[0][1].n_qubits
    out = []
    for rule in analysis.rules:
        p = PauliString.identity(n)
        for label in rule.labels:
            p = p * ops[label]
        out.append(p)
    return out


def enumerate_orbits(t: HexTorus, analysis: SectorAnalysis, measured: Sequence[Tuple[str, PauliString]],
                     rings: List[Ring], bond_ops: Dict[Tuple[str, int], PauliString]) -> List[Orbit]:
    """
    One orbit per achievable flip pattern `b` of the rules: solve `[z_v | x_v] . [x_Q | z_Q] = b` for a Pauli `Q`
    and read the bond signs off its commutation with the CC terms.
    """
    n = t.n_qubits
    products = _rule_products(analysis, measured)
    system = np.stack([np.concatenate([p.symplectic_row()[n:], p.symplectic_row()[:n]]) for p in products])
    base = tuple(rule.rhs for rule in analysis.rules)

    orbits = []
    for flips in itertools.product((0, 1), repeat = len(products)):
        u = solve_gf2(system, np.array(flips, dtype = np.uint8))
        if u is None:
            continue

        x, z = BitVector.from_array(u[:n]), BitVector.from_array(u[n:])
        shift = PauliString(n, x, z, len(x & z))
        twists = []
        for ring in rings:
            kind = "X" if ring.shade == LIGHT else "Z"
            sign = 1
            for h in ring.bonds:
                if not shift.commutes(bond_ops[(kind, h)]):
                    sign = -sign
            twists.append(sign)

        orbits.append(Orbit(tuple(flips), tuple(a ^ b for a, b in zip(base, flips)), tuple(twists), shift))

    return orbits


@dataclass
class MapDerivation:
    analysis: SectorAnalysis
    rings: List[Ring]
    orbits: List[Orbit]
    ensemble: ChainEnsemble

    def to_dict(self):
        return {
            "rules": [r.to_dict() for r in self.analysis.rules],
            "audit": self.analysis.audit,
            "rings": [{"shade": r.shade, "row": r.row, "sites": r.sites, "bonds": r.bonds} for r in self.rings],
            "orbits": [o.to_dict() for o in self.orbits],
            "ensemble": self.ensemble.to_dict()
        }


def derive_map(t: HexTorus, g_t: float = 1.0, g_c: float = 1.0) -> MapDerivation:
    """
    Derive the chain ensemble equivalent to the interpolating Hamiltonian.

    Within the orbit of `Q |phi_c>`, the joint sign sectors of the measured set are one-dimensional; TC terms act
    as fields on the trapezoid signs and every CC term flips two of them with the sign of its commutation with
    `Q`. The admitted sign patterns are those satisfying the sector rules with right-hand sides shifted by `Q`.
    """
    require_admissible(t)

    measured = measured_set(t)
    analysis = analyze_sectors(phi_c_group(t), measured)
    if analysis.measured_rank != t.n_qubits:
        raise AuditFailure(f"Measured set has rank {analysis.measured_rank}, expected {t.n_qubits}.",
                           rank = analysis.measured_rank, n_qubits = t.n_qubits)

    g = cc_bond_graph(t)
    rings = derive_rings(t, g)
    bond_ops = {key: data["op"] for _, _, key, data in g.edges(keys = True, data = True)}

    orbits = enumerate_orbits(t, analysis, measured, rings, bond_ops)
    shared = analysis.audit["shared_rank"]
    if len(orbits) != 1 << shared:
        raise AuditFailure(f"Found {len(orbits)} orbits, expected 2^{shared}.", orbits = len(orbits), shared = shared)

    over_rings = [_rule_over_rings(rule, rings, t) for rule in analysis.rules]

    sectors: Dict[SectorKey, int] = {}
    for orbit in orbits:
        for bits in itertools.product((0, 1), repeat = len(rings) + 2):
            parities, i_bit, j_bit = bits[:-2], bits[-2], bits[-1]
            ok = True
            for (members, uses_i, uses_j), rhs in zip(over_rings, orbit.rhs):
                acc = (uses_i & i_bit) ^ (uses_j & j_bit)
                for m in members:
                    acc ^= parities[m]
                if acc != rhs:
                    ok = False
                    break

            if ok:
                key = (orbit.twists, tuple(parities))
                sectors[key] = sectors.get(key, 0) + 1

    ensemble = ChainEnsemble([len(r) for r in rings], sectors, g_t = g_t, g_c = g_c,
                             provenance = [(r.row, r.shade) for r in rings], label = f"derived-{t.n_rows}x{t.n_cols}")
    ensemble.audit(t.n_qubits)

    logger.info(f"Derived {len(rings)} rings, {len(analysis.rules)} rules and {len(orbits)} orbits on {t}.")
    return MapDerivation(analysis, rings, orbits, ensemble)


def derive_ensemble(t: HexTorus, g_t: float = 1.0, g_c: float = 1.0, naive: bool = False) -> ChainEnsemble:
    if naive:
        return naive_ensemble(t, g_t, g_c)

    return derive_map(t, g_t, g_c).ensemble


def naive_ensemble(t: HexTorus, g_t: float = 1.0, g_c: float = 1.0) -> ChainEnsemble:
    """
    The untwisted ensemble: every ring periodic, total light and total dark parity even, and four copies for
    the TC loop labels.
    """
    require_admissible(t)

    rings = sorted(t.light_rings, key = lambda r: r.row) + sorted(t.dark_rings, key = lambda r: r.row)
    num_light = len(t.light_rings)
    twists = tuple(1 for _ in rings)

    sectors: Dict[SectorKey, int] = {}
    for parities in itertools.product((0, 1), repeat = len(rings)):
        if sum(parities[:num_light]) % 2 == 0 and sum(parities[num_light:]) % 2 == 0:
            sectors[(twists, tuple(parities))] = 4

    ensemble = ChainEnsemble([len(r) for r in rings], sectors, g_t = g_t, g_c = g_c,
                             provenance = [(r.row, r.shade) for r in rings], label = f"naive-{t.n_rows}x{t.n_cols}")
    ensemble.audit(t.n_qubits)
    return ensemble


@dataclass
class VerificationReport:
    couplings: Tuple[float, float]
    ed: List[float]
    predicted: List[float]
    naive_predicted: List[float]
    max_abs_diff: float
    naive_max_abs_diff: float
    multiplicity_ok: bool
    fourfold_ok: bool
    rules: List[SectorRule] = field(default_factory = list)

    @property
    def passed(self) -> bool:
        return self.multiplicity_ok and self.fourfold_ok and \
            self.max_abs_diff <= resolve(None, "energy_tol") * max(1.0, abs(self.ed[0]))

    def to_dict(self):
        return {
            "couplings": list(self.couplings),
            "ed": self.ed,
            "predicted": self.predicted,
            "naive_predicted": self.naive_predicted,
            "max_abs_diff": self.max_abs_diff,
            "naive_max_abs_diff": self.naive_max_abs_diff,
            "multiplicity_ok": self.multiplicity_ok,
            "fourfold_ok": self.fourfold_ok,
            "passed": self.passed,
            "rules": [r.to_dict() for r in self.rules]
        }


def _closed_degeneracies(levels: Sequence[float], cluster_tol: float) -> List[int]:
    # The last cluster may be cut by `k`
    clusters = cluster_levels(list(levels), cluster_tol)
    return [end - start for start, end in clusters[:-1]]


def fourfold_clusters(levels: Sequence[float], cluster_tol: float = None) -> bool:
    """
    Whether every closed cluster of `levels` has a multiplicity divisible by 4.
    """
    cluster_tol = resolve(cluster_tol, "cluster_tol")
    return all(d % 4 == 0 for d in _closed_degeneracies(levels, cluster_tol))


def map_verify(t: HexTorus, g_t: float, g_c: float, k: int = 16, tol: float = None,
               cluster_tol: float = None, derivation: Optional[MapDerivation] = None) -> VerificationReport:
    """
    Compare the `k` lowest levels of the interpolating Hamiltonian with the derived and the naive ensembles.
    """
    cluster_tol = resolve(cluster_tol, "cluster_tol")
    if derivation is None:
        derivation = derive_map(t, g_t, g_c)

    ed = lowest_eigs(interpolate(t, g_t, g_c), k, tol = tol, cluster_tol = cluster_tol, return_vectors = False)
    ed_levels = [float(e) for e in ed.eigenvalues[:k]]

    predicted = assemble_k_lowest(derivation.ensemble.at(g_t, g_c), k)
    naive = assemble_k_lowest(naive_ensemble(t, g_t, g_c), k)

    report = VerificationReport(
        couplings = (g_t, g_c),
        ed = ed_levels,
        predicted = [float(e) for e in predicted],
        naive_predicted = [float(e) for e in naive],
        max_abs_diff = float(np.max(np.abs(np.array(ed_levels) - np.array(predicted)))),
        naive_max_abs_diff = float(np.max(np.abs(np.array(ed_levels) - np.array(naive)))),
        multiplicity_ok = _closed_degeneracies(ed_levels, cluster_tol) == _closed_degeneracies(predicted, cluster_tol),
        fourfold_ok = fourfold_clusters(ed_levels, cluster_tol),
        rules = list(derivation.analysis.rules)
    )

    logger.info(f"Map check at (g_t, g_c) = ({g_t}, {g_c}): max |ED - chains| = {report.max_abs_diff:.3e}, "
                f"naive {report.naive_max_abs_diff:.3e}.")
    return report
