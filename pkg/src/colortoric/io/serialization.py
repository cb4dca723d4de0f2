from __future__ import annotations

import hashlib
import json
import logging
from typing import Dict, List

from colortoric.errors import SizeMismatch
from colortoric.lattice import HexTorus, Trapezoid, Ring, LoopSpec, LIGHT, DARK, build_hex_torus
from colortoric.lattice.coloring import colored_edges

logger = logging.getLogger(__name__)

INSTANCE_HEADER = "colortoric-instance"
INSTANCE_VERSION = 1


def _ints(values) -> str:
    return " ".join(str(int(v)) for v in values)


def serialize_instance(t: HexTorus) -> str:
    """
    Canonical plain-text form of a fully constructed torus: dimensions, qubit map, hexagons with their colors,
    the trapezoid partition, the rings and all routed loops.
    """
    assert t.colored and t.shaded, "Only colored and partitioned tori can be serialized."

    lines = [f"{INSTANCE_HEADER} {INSTANCE_VERSION}", f"n_rows: {t.n_rows}", f"n_cols: {t.n_cols}"]
    if t.split is not None:
        lines.append(f"split: {t.split['orientation']} {t.split['light_half']}")

    for q in range(t.n_qubits):
        lines.append(f"qubit {q}: {_ints(t.qubit_hexagons(q))}")
    for h in range(t.num_hexagons):
        lines.append(f"hexagon {h}: {t.colors[h]} | {_ints(t.hexagons[h])}")
    for i, trap in enumerate(t.trapezoids):
        lines.append(f"trapezoid {i}: {trap.shade} {trap.hexagon} {trap.row} {trap.position} | {_ints(trap.qubits)}")
    for ring in t.light_rings + t.dark_rings:
        lines.append(f"ring {ring.shade} {ring.row}: {_ints(ring.sites)} | {_ints(ring.bonds)}")
    for name in sorted(t.loops):
        loop = t.loops[name]
        meta = json.dumps(loop.metadata, sort_keys = True, separators = (",", ":"))
        lines.append(f"loop {name}: {loop.kind} {loop.pauli} | {_ints(loop.qubits)} | {meta}")

    return "\n".join(lines) + "\n"


def _split_fields(value: str) -> List[str]:
    return [part.strip() for part in value.split("|")]


def _parse_ints(value: str) -> List[int]:
    return [int(v) for v in value.split()]


def deserialize_instance(text: str) -> HexTorus:
    """
    Rebuild a torus from `serialize_instance` output. The geometry is regenerated from the dimensions and must
    agree with the stored qubit map; colors, partition and loops are taken from the file as stored.
    """
    lines = [l for l in text.splitlines() if l.strip() and not l.startswith("#")]
    header = lines[0].split()
    if len(header) != 2 or header[0] != INSTANCE_HEADER:
        raise ValueError(f"Unknown instance header `{lines[0]}`.")
    if int(header[1]) != INSTANCE_VERSION:
        raise ValueError(f"Unsupported instance version `{header[1]}`.")

    entries: Dict[str, list] = {}
    for line in lines[1:]:
        key, _, value = line.partition(":")
        kind = key.split()[0]
        entries.setdefault(kind, []).append((key.split()[1:], value.strip()))

    n_rows = int(entries["n_rows"][0][1])
    n_cols = int(entries["n_cols"][0][1])
    t = build_hex_torus(n_rows, n_cols)

    for args, value in entries.get("qubit", []):
        q = int(args[0])
        if tuple(_parse_ints(value)) != t.qubit_hexagons(q):
            raise SizeMismatch(f"Qubit {q} touches hexagons {value}, expected {t.qubit_hexagons(q)}.",
                               qubit = q, expected = list(t.qubit_hexagons(q)), got = value)

    colors = [0] * t.num_hexagons
    for args, value in entries.get("hexagon", []):
        color, qubits = _split_fields(value)
        h = int(args[0])
        if tuple(_parse_ints(qubits)) != t.hexagons[h]:
            raise SizeMismatch(f"Hexagon {h} has qubits {qubits}, expected {list(t.hexagons[h])}.", hexagon = h)
        colors[h] = int(color)
    t.colors = colors
    t.edges = colored_edges(t)

    traps = []
    for args, value in entries.get("trapezoid", []):
        head, qubits = _split_fields(value)
        shade, hexagon, row, position = head.split()
        traps.append(Trapezoid(_parse_ints(qubits), shade, int(hexagon), row = int(row), position = int(position)))
    t.trapezoids = traps
    t.light_ids = [i for i, trap in enumerate(traps) if trap.shade == LIGHT]
    t.dark_ids = [i for i, trap in enumerate(traps) if trap.shade == DARK]

    for args, value in entries.get("ring", []):
        sites, bonds = _split_fields(value)
        ring = Ring(args[0], int(args[1]), _parse_ints(sites), _parse_ints(bonds))
        (t.light_rings if ring.shade == LIGHT else t.dark_rings).append(ring)

    if "split" in entries:
        orientation, light_half = _parse_ints(entries["split"][0][1])
        t.split = {"orientation": orientation, "light_half": light_half}

    for args, value in entries.get("loop", []):
        head, qubits, meta = _split_fields(value)
        kind, pauli = head.split()
        t.loops[args[0]] = LoopSpec(args[0], kind, pauli, _parse_ints(qubits), t.n_qubits, **json.loads(meta))

    logger.debug(f"Deserialized {t} with {len(t.loops)} loops.")
    return t


def instance_hash(t: HexTorus) -> str:
    return hashlib.sha256(serialize_instance(t).encode("utf-8")).hexdigest()


def request_hash(request: Dict) -> str:
    """
    SHA-256 of the canonical JSON form of a request (sorted keys, no whitespace).
    """
    text = json.dumps(request, sort_keys = True, separators = (",", ":"), default = str)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
