import re

import numpy as np
import pytest

from conftest import brute
from stampfold import render
from stampfold.enumeration import enumerate_all_foldings
from stampfold.folding import arcs_of
from stampfold.render import (
    DiagramSpec,
    RenderError,
    ascii_folding,
    ascii_meander,
    bracket_depths,
    render_folding,
    render_meander,
)
from stampfold.shapes import canonical_under_G, is_meander

MEANDER = DiagramSpec(kind="meander")
BLANK = DiagramSpec(labeled=False)


def meanders(n):
    return [f.listing for f in enumerate_all_foldings(n) if is_meander(f)]


# ------------------------------------------------------------ river geometry


def river_polyline(doc, samples=48):
    """Sample the river path of a meander document into a polyline."""
    d = re.search(r'class="river" d="([^"]*)"', doc).group(1)
    tokens = re.findall(r"[MVA]|-?\d+(?:\.\d+)?", d)
    pts = []
    x = y = road = None
    i = 0
    while i < len(tokens):
        cmd = tokens[i]
        if cmd == "M":
            x, y = float(tokens[i + 1]), float(tokens[i + 2])
            pts.append((x, y))
            i += 3
        elif cmd == "V":
            y = float(tokens[i + 1])
            pts.append((x, y))
            road = y if road is None else road
            i += 2
        else:
            r, sweep = float(tokens[i + 1]), int(tokens[i + 5])
            xb = float(tokens[i + 6])
            cx = (x + xb) / 2
            # sweep 1 is clockwise on screen, i.e. over the top when heading east
            up = (sweep == 1) == (xb > x)
            for s in np.linspace(0, 1, samples)[1:]:
                px = cx + (x - cx) * np.cos(np.pi * s)
                py = road - r * np.sin(np.pi * s) if up else road + r * np.sin(np.pi * s)
                pts.append((px, py))
            x, y = xb, road
            i += 8
    return np.array(pts)


def self_crossings(poly):
    """Count proper crossings between non-adjacent segments."""
    a, b = poly[:-1], poly[1:]
    m = len(a)

    def orient(p, q, r):
        return ((q[..., 0] - p[..., 0]) * (r[..., 1] - p[..., 1])
                - (q[..., 1] - p[..., 1]) * (r[..., 0] - p[..., 0]))

    A, B = a[:, None], b[:, None]
    C, D = a[None, :], b[None, :]
    d1, d2 = orient(A, B, C), orient(A, B, D)
    d3, d4 = orient(C, D, A), orient(C, D, B)
    eps = 1e-9
    hit = (d1 * d2 < -eps) & (d3 * d4 < -eps)
    idx = np.arange(m)
    hit &= np.abs(idx[:, None] - idx[None, :]) > 1
    return int(np.triu(hit).sum())


def test_geometry_checker_detects_a_crossing():
    poly = np.array([(0, 0), (2, 2), (2, 0), (0, 2)], dtype=float)
    assert self_crossings(poly) == 1
    assert self_crossings(np.array([(0, 0), (1, 0), (1, 1), (0, 1)], dtype=float)) == 0


@pytest.mark.parametrize("n", range(1, 9))
def test_meander_rivers_are_simple_curves(n):
    for p in meanders(n):
        poly = river_polyline(render_meander(p, MEANDER))
        assert self_crossings(poly) == 0, p


def test_opposite_convention_crosses(monkeypatch):
    monkeypatch.setattr(render, "river_goes_above", lambda j: j % 2 == 0)
    crossed = sum(self_crossings(river_polyline(render_meander(p, MEANDER))) > 0 for p in meanders(6))
    assert crossed > 0


# ------------------------------------------------------------ foldings


def test_accordion_ascii_golden():
    assert ascii_folding((1, 2, 3, 4)) == (
        " --1--+\n"
        "+--2--+\n"
        "+--3--+\n"
        " --4--+\n")


def test_nested_ascii_golden():
    assert ascii_folding((1, 4, 3, 2)) == (
        " --1---+\n"
        " --4--+|\n"
        "+--3--+|\n"
        "+--2---+\n")


def test_accordion_depths_alternate():
    arcs = arcs_of((1, 2, 3, 4))
    assert set(bracket_depths(arcs).values()) == {1}
    assert [a.side for a in sorted(arcs, key=lambda a: a.label_pair)] == ["right", "left", "right"]


def test_nested_depths():
    d = bracket_depths(arcs_of((1, 4, 3, 2)))
    assert d[1, 2] == 2 and d[3, 4] == 1 and d[2, 3] == 1


def test_svg_structure():
    doc = render_folding((1, 4, 3, 2))
    assert doc.startswith('<?xml version="1.0"')
    assert doc.count("<line ") == 4
    assert doc.count('class="right"') == 2 and doc.count('class="left"') == 1
    assert "<text" in doc and "<text" not in render_folding((1, 4, 3, 2), BLANK)


def test_brackets_of_one_side_do_not_overlap():
    for p in brute(7):
        arcs = arcs_of(p)
        depth = bracket_depths(arcs)
        for a in arcs:
            for b in arcs:
                if a is not b and a.side == b.side and depth[a.label_pair] == depth[b.label_pair]:
                    assert a.hi < b.lo or b.hi < a.lo


def test_blank_shapes_of_four_render_distinctly():
    shapes = {canonical_under_G(p) for p in brute(4)}
    assert len(shapes) == 5
    assert len({render_folding(s, BLANK) for s in shapes}) == 5


@pytest.mark.parametrize("n", range(1, 8))
def test_blank_canonical_shapes_render_distinctly(n):
    shapes = {canonical_under_G(p) for p in brute(n)}
    assert len({render_folding(s, BLANK) for s in shapes}) == len(shapes)


@pytest.mark.parametrize("n", range(1, 7))
def test_folding_render_is_injective(n):
    docs = {render_folding(p) for p in brute(n)}
    assert len(docs) == len(brute(n))
    assert len({ascii_folding(p) for p in brute(n)}) == len(brute(n))


def test_render_is_byte_deterministic():
    for p in brute(5):
        assert render_folding(p) == render_folding(tuple(p))
        assert ascii_folding(p) == ascii_folding(list(p))


def test_diagram_spec_validation():
    with pytest.raises(ValueError):
        DiagramSpec(cell=0)
    with pytest.raises(ValueError):
        DiagramSpec(kind="maze")


# ------------------------------------------------------------ meanders


def test_single_bridge_meander():
    doc = render_meander((1,), MEANDER)
    d = re.search(r'class="river" d="([^"]*)"', doc).group(1)
    assert "A" not in d and d.count("V") == 2


def test_five_bridge_meanders_distinct():
    ms = meanders(5)
    assert len(ms) == 8
    assert len({render_meander(p, MEANDER) for p in ms}) == 8


@pytest.mark.parametrize("n", range(1, 7))
def test_meander_render_is_injective(n):
    ms = meanders(n)
    assert len({render_meander(p, MEANDER) for p in ms}) == len(ms)


def test_non_meander_rejected():
    with pytest.raises(RenderError):
        render_meander((2, 1, 4, 3), MEANDER)
    with pytest.raises(RenderError):
        ascii_meander((2, 1, 4, 3))


def test_river_enters_from_below_and_exits_by_parity():
    for n in (3, 4):
        p = meanders(n)[0]
        poly = river_polyline(render_meander(p, MEANDER))
        road = poly[1, 1]
        assert poly[0, 1] > road
        assert (poly[-1, 1] < road) == (n % 2 == 1)


def test_ascii_meander_golden():
    assert ascii_meander((1, 2, 3)) == (
        "bridges: 1 2 3\n"
        "1 -> 2  above  (1..2)\n"
        "2 -> 3  below  (2..3)\n")
