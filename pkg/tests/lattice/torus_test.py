import colortoric
import pytest

from colortoric.errors import DoesNotFit, InadmissibleTorus
from colortoric.lattice import build_hex_torus, make_torus, validate, validate_dims, require_admissible
from colortoric.lattice import wilson_rectangle, wilson_rectangles, tc_membership, cc_stabilizers, tc_stabilizers
from colortoric.lattice import LIGHT, DARK, CC_COLORED, TC_NONCONTRACTIBLE
from colortoric.lattice.loops import tc_loop_name
from colortoric.pauli import PauliString


def test_bare_geometry():
    t = build_hex_torus(3, 3)
    assert t.n_qubits == 18
    assert t.num_hexagons == 9

    counts = [0] * t.n_qubits
    for verts in t.hexagons:
        assert len(set(verts)) == 6
        for q in verts:
            counts[q] += 1
    assert all(c == 3 for c in counts)

    for q in range(t.n_qubits):
        assert q in t.hexagons[q // 2]
        for h in t.qubit_hexagons(q):
            assert q in t.hexagons[h]

    assert not t.colored and not t.shaded


def test_coloring_and_shading():
    t = make_torus(3, 3)
    # Rows are monochromatic and consecutive rows differ
    row_colors = [t.colors[r * t.n_cols] for r in range(t.n_rows)]
    assert sorted(row_colors) == [0, 1, 2]
    for h in range(t.num_hexagons):
        assert t.colors[h] == row_colors[t.row_of(h)]
        for nb in t.neighbors(h):
            assert t.colors[nb] != t.colors[h]

    assert len(t.light_ids) == 9 and len(t.dark_ids) == 9
    assert t.light_ids == list(range(9))
    assert len(t.light_rings) == 3 and len(t.dark_rings) == 3

    for ring in t.light_rings + t.dark_rings:
        assert len(ring) == 3
        for pos, i in enumerate(ring.sites):
            assert t.trapezoids[i].row == ring.row
            assert t.trapezoids[i].position == pos
            assert t.trapezoids[i].shade == ring.shade

    # Light ring bonds are X-type hexagon terms coupling neighbouring sites
    for ring in t.light_rings:
        for pos, h in enumerate(ring.bonds):
            hx = t.hexagon_operator(h, "X")
            a = t.trapezoid_operator(ring.sites[pos])
            b = t.trapezoid_operator(ring.sites[(pos + 1) % len(ring)])
            assert not hx.commutes(a) and not hx.commutes(b)

    for i in t.light_ids:
        for j in t.dark_ids:
            assert t.trapezoid_operator(i).commutes(t.trapezoid_operator(j))


def test_stabilizers_commute():
    t = make_torus(3, 3)
    cc = cc_stabilizers(t)
    tc = tc_stabilizers(t)
    assert len(cc) == 18 and len(tc) == 18

    for ops in (cc, tc):
        for a in ops:
            for b in ops:
                assert a.commutes(b)


def test_loops():
    t = make_torus(3, 3)
    cc_loops = [l for l in t.loops.values() if l.kind == CC_COLORED]
    tc_loops = [l for l in t.loops.values() if l.kind == TC_NONCONTRACTIBLE]
    assert len(cc_loops) == 12
    assert len(tc_loops) == 4

    cc = cc_stabilizers(t)
    for loop in cc_loops:
        op = loop.operator()
        assert all(op.commutes(s) for s in cc)

    tc = tc_stabilizers(t)
    for loop in tc_loops:
        op = loop.operator()
        assert all(op.commutes(s) for s in tc)

    z0 = t.loops[tc_loop_name("Z", 0)].operator()
    x0 = t.loops[tc_loop_name("X", 0)].operator()
    z1 = t.loops[tc_loop_name("Z", 1)].operator()
    x1 = t.loops[tc_loop_name("X", 1)].operator()
    assert z0.commutes(x0)
    assert not z0.commutes(x1)
    assert not z1.commutes(x0)


def test_validation():
    report, t = validate_dims(3, 3)
    assert report.admissible
    assert report.failed() == []
    assert report.check("loops").passed
    require_admissible(t)

    report, t = validate_dims(2, 2)
    assert not report.admissible
    assert "construction" in report.failed()
    with pytest.raises(InadmissibleTorus):
        require_admissible(t)

    # A bare torus is reported, not raised on
    report = validate(build_hex_torus(3, 3))
    assert not report.admissible
    assert report.check("hexagon_incidence").passed
    assert not report.check("coloring").passed


def test_wilson_rectangles():
    t = make_torus(3, 3)

    loop = wilson_rectangle(t, 1, 1)
    assert loop.operator() == t.trapezoid_operator(0)
    assert len(loop) == 4

    rects = wilson_rectangles(t)
    assert len(rects) == 4
    for rect in rects:
        assert len(rect.metadata["enclosed"]) == rect.metadata["height"] * rect.metadata["width"]
        op = rect.operator()
        for s in cc_stabilizers(t):
            assert op.commutes(s)
        assert tc_membership(t, rect) == 1

    # Noncontractible TC loops commute with every TC term but are not products of them
    assert tc_membership(t, t.loops[tc_loop_name("Z", 0)]) is None
    assert tc_membership(t, t.loops[tc_loop_name("X", 1)]) is None

    with pytest.raises(DoesNotFit):
        wilson_rectangle(t, 3, 1)
    with pytest.raises(DoesNotFit):
        wilson_rectangle(t, 1, 3)


if __name__ == "__main__":
    test_bare_geometry()
    test_coloring_and_shading()
    test_stabilizers_commute()
    test_loops()
    test_validation()
    test_wilson_rectangles()
