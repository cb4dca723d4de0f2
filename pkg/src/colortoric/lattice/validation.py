from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

from colortoric.errors import ColortoricError, InadmissibleTorus
from colortoric.pauli import PauliString, StabilizerGroup, product
from .torus import HexTorus, build_hex_torus, LIGHT, DARK
from .coloring import three_color, is_proper
from .trapezoids import partition_trapezoids, _build_rings
from .loops import noncontractible_loops, cc_stabilizers, tc_stabilizers, tc_loop_name, CC_COLORED

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class ValidationReport:
    n_rows: int
    n_cols: int
    checks: List[CheckResult] = field(default_factory = list)

    @property
    def admissible(self) -> bool:
        return len(self.checks) > 0 and all(c.passed for c in self.checks)

    def failed(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {"n_rows": self.n_rows, "n_cols": self.n_cols, "admissible": self.admissible,
                "checks": [c.to_dict() for c in self.checks]}

    @classmethod
    def from_dict(cls, d):
        return cls(d["n_rows"], d["n_cols"], [CheckResult(**c) for c in d["checks"]])


def _check_hexagon_incidence(t: HexTorus) -> Tuple[bool, str]:
    counts = [0] * t.n_qubits
    for h, verts in enumerate(t.hexagons):
        if len(set(verts)) != 6:
            return False, f"hexagon {h} has repeated qubits"
        for q in verts:
            counts[q] += 1

    bad = [q for q, c in enumerate(counts) if c != 3]
    return len(bad) == 0, "" if len(bad) == 0 else f"qubits {bad} not in exactly 3 hexagons"


def _check_coloring(t: HexTorus) -> Tuple[bool, str]:
    if not t.colored:
        return False, "torus is not colored"
    return is_proper(t), ""


def _check_trapezoid_incidence(t: HexTorus) -> Tuple[bool, str]:
    counts = {LIGHT: [0] * t.n_qubits, DARK: [0] * t.n_qubits}
    for trap in t.trapezoids:
        if len(set(trap.qubits)) != 4:
            return False, "trapezoid with repeated qubits"
        for q in trap.qubits:
            counts[trap.shade][q] += 1

    ok = all(c == 2 for shade in counts for c in counts[shade])
    per_row = all(len(ring) == t.n_cols for ring in t.light_rings + t.dark_rings)
    return ok and per_row, "" if ok and per_row else "trapezoid incidence or row sizes violated"


def _check_row_property(t: HexTorus) -> Tuple[bool, str]:
    """
    Recompute the rings from the stored trapezoids and compare with the stored rings.
    """
    for shade, stored in ((LIGHT, t.light_rings), (DARK, t.dark_rings)):
        rings = _build_rings(t, t.trapezoids, shade)
        if rings is None:
            return False, f"{shade} trapezoids violate the row property"
        for ring, ref in zip(rings, stored):
            if sorted(ring.sites) != sorted(ref.sites) or sorted(ring.bonds) != sorted(ref.bonds):
                return False, f"{shade} ring of row {ring.row} differs from the stored one"

    return True, ""


def _pairwise_commuting(ops: List[PauliString]) -> bool:
    return all(ops[i].commutes(ops[j]) for i in range(len(ops)) for j in range(i))


def _check_products(t: HexTorus) -> Tuple[bool, str]:
    trivial = StabilizerGroup(t.n_qubits)
    light = product([t.trapezoid_operator(i) for i in t.light_ids])
    dark = product([t.trapezoid_operator(i) for i in t.dark_ids])
    ok = trivial.member_with_sign(light) == 1 and trivial.member_with_sign(dark) == 1
    return ok, "" if ok else "product of one shade is not the identity"


def _check_loops(t: HexTorus) -> Tuple[bool, str]:
    if len(t.loops) == 0:
        return False, "no loops routed"

    cc_stabs = cc_stabilizers(t)
    tc_stabs = tc_stabilizers(t)
    for name, loop in t.loops.items():
        if loop.kind != CC_COLORED and not name.startswith("tc_"):
            continue
        op = loop.operator()
        stabs = cc_stabs if loop.kind == CC_COLORED else tc_stabs
        if not all(op.commutes(s) for s in stabs):
            return False, f"`{name}` does not commute with its stabilizers"

    z0, x0 = t.loops[tc_loop_name("Z", 0)].operator(), t.loops[tc_loop_name("X", 0)].operator()
    z1, x1 = t.loops[tc_loop_name("Z", 1)].operator(), t.loops[tc_loop_name("X", 1)].operator()
    if not all(p.commutes(s) for p in (z0, x0) for s in cc_stabs):
        return False, "row TC loops do not commute with the CC terms"
    if not (z0.commutes(x0) and not z0.commutes(x1) and not z1.commutes(x0)):
        return False, "TC loops have the wrong pairing"

    return True, ""


def validate(t: HexTorus) -> ValidationReport:
    """
    Run every structural check on `t` as stored; never raises for a malformed torus.
    """
    report = ValidationReport(t.n_rows, t.n_cols)

    checks: List[Tuple[str, Callable, bool]] = [
        ("hexagon_incidence", _check_hexagon_incidence, True),
        ("coloring", _check_coloring, True),
        ("trapezoid_incidence", _check_trapezoid_incidence, t.shaded),
        ("shading", _check_row_property, t.shaded),
        ("cc_commuting", lambda t: (_pairwise_commuting(cc_stabilizers(t)), ""), True),
        ("tc_commuting", lambda t: (_pairwise_commuting(tc_stabilizers(t)), ""), t.shaded),
        ("shade_products", _check_products, t.shaded),
        ("loops", _check_loops, t.shaded and t.colored),
    ]
    for name, fn, applicable in checks:
        if not applicable:
            report.checks.append(CheckResult(name, False, "prerequisite stage missing"))
            continue
        try:
            passed, detail = fn(t)
        except (ColortoricError, AssertionError, KeyError, IndexError) as err:
            passed, detail = False, f"{type(err).__name__}: {err}"
        report.checks.append(CheckResult(name, bool(passed), detail))

    logger.info(f"Validated {t}: admissible = {report.admissible}, failed = {report.failed()}.")
    return report


def make_torus(n_rows: int, n_cols: int) -> HexTorus:
    """
    Build, color, partition and route loops; raises the first stage failure.
    """
    t = build_hex_torus(n_rows, n_cols)
    three_color(t)
    partition_trapezoids(t)
    noncontractible_loops(t)
    return t


def validate_dims(n_rows: int, n_cols: int) -> Tuple[ValidationReport, HexTorus]:
    """
    Construct as many stages as possible and validate the result; construction failures become failed checks.
    """
    t = build_hex_torus(n_rows, n_cols)
    stage_failure = None
    for stage in (three_color, partition_trapezoids, noncontractible_loops):
        try:
            stage(t)
        except ColortoricError as err:
            stage_failure = CheckResult("construction", False, f"{type(err).__name__}: {err.message}")
            break

    report = validate(t)
    if stage_failure is not None:
        report.checks.insert(0, stage_failure)

    return report, t


def require_admissible(t: HexTorus):
    if not (t.colored and t.shaded and len(t.loops) > 0):
        raise InadmissibleTorus(f"{t} has not been fully constructed.", n_rows = t.n_rows, n_cols = t.n_cols)
