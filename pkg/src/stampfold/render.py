"""SVG and ASCII drawings of foldings (stack view) and meanders (road view)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence
from xml.sax.saxutils import escape

from .folding import LEFT, RIGHT, Arc, Folding, arcs_of
from .perm import Permutation, make_permutation
from .shapes import is_meander

SVG_HEADER = '<?xml version="1.0" encoding="UTF-8"?>\n'
SVG_NS = "http://www.w3.org/2000/svg"


class RenderError(ValueError):
    pass


@dataclass(frozen=True)
class DiagramSpec:
    kind: str = "folding"
    cell: int = 20
    labeled: bool = True

    def __post_init__(self):
        if self.kind not in ("folding", "meander"):
            raise ValueError("kind must be 'folding' or 'meander'")
        if self.cell <= 0:
            raise ValueError("cell must be positive")


def _num(x: float) -> str:
    return ("%.3f" % x).rstrip("0").rstrip(".")


def _listing(f) -> Permutation:
    if isinstance(f, Folding):
        return f.listing
    return make_permutation(f)


def bracket_depths(arcs: Sequence[Arc]) -> dict[tuple[int, int], int]:
    """Nesting depth per arc: 1 + deepest same-side arc strictly inside it."""
    depth = {}
    for side in (LEFT, RIGHT):
        same = sorted((a for a in arcs if a.side == side), key=lambda a: a.hi - a.lo)
        for a in same:
            inner = [depth[b.label_pair] for b in same
                     if b.label_pair in depth and a.lo < b.lo and b.hi < a.hi]
            depth[a.label_pair] = 1 + max(inner, default=0)
    return depth


# ---------------------------------------------------------------- foldings


def render_folding(f, spec: DiagramSpec = DiagramSpec()) -> str:
    """Stack diagram: one horizontal stamp per position, arcs as brackets."""
    listing = _listing(f)
    n = len(listing)
    arcs = arcs_of(listing)
    depth = bracket_depths(arcs)
    c = spec.cell
    step = c // 2 or 1
    left_max = max((depth[a.label_pair] for a in arcs if a.side == LEFT), default=0)
    right_max = max((depth[a.label_pair] for a in arcs if a.side == RIGHT), default=0)
    x0 = c + left_max * step
    x1 = x0 + 3 * c
    width = x1 + right_max * step + c
    height = (n + 1) * c

    def y(position: int) -> int:
        return position * c

    out = [SVG_HEADER,
           '<svg xmlns="%s" version="1.1" width="%d" height="%d" viewBox="0 0 %d %d">\n'
           % (SVG_NS, width, height, width, height),
           '<g class="stamps" stroke="black" stroke-width="2">\n']
    for i, label in enumerate(listing, 1):
        out.append('<line x1="%d" y1="%d" x2="%d" y2="%d"/>\n' % (x0, y(i), x1, y(i)))
    out.append('</g>\n<g class="perforations" fill="none" stroke="black" stroke-width="1">\n')
    for a in arcs:
        d = depth[a.label_pair]
        edge, outer = (x0, x0 - d * step) if a.side == LEFT else (x1, x1 + d * step)
        out.append('<path class="%s" d="M%d %d H%d V%d H%d"/>\n'
                   % (a.side, edge, y(a.lo), outer, y(a.hi), edge))
    out.append('</g>\n')
    if spec.labeled:
        out.append('<g class="labels" font-family="monospace" font-size="%d" text-anchor="middle">\n'
                   % max(c // 2, 6))
        for i, label in enumerate(listing, 1):
            out.append('<text x="%s" y="%d">%d</text>\n' % (_num((x0 + x1) / 2), y(i) - 2, label))
        out.append('</g>\n')
    out.append('</svg>\n')
    return "".join(out)


def ascii_folding(f, labeled: bool = True) -> str:
    """Text rendering: one row per stamp, one column per bracket depth per side."""
    listing = _listing(f)
    n = len(listing)
    arcs = arcs_of(listing)
    depth = bracket_depths(arcs)
    lw = max((depth[a.label_pair] for a in arcs if a.side == LEFT), default=0)
    rw = max((depth[a.label_pair] for a in arcs if a.side == RIGHT), default=0)
    width = len(str(n)) + 4
    left = [[" "] * lw for _ in range(n + 1)]
    right = [[" "] * rw for _ in range(n + 1)]
    for a in arcs:
        d = depth[a.label_pair]
        if a.side == LEFT:
            col, grid, near = lw - d, left, range(lw - d + 1, lw)
        else:
            col, grid, near = d - 1, right, range(0, d - 1)
        for row in (a.lo, a.hi):
            grid[row][col] = "+"
            for k in near:
                grid[row][k] = "-"
        for row in range(a.lo + 1, a.hi):
            grid[row][col] = "|"
    lines = []
    for i, label in enumerate(listing, 1):
        stamp = str(label).center(width, "-") if labeled else "-" * width
        lines.append(("".join(left[i]) + stamp + "".join(right[i])).rstrip())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- meanders


def river_goes_above(j: int) -> bool:
    # the river enters from below, so the first arc (label 1 -> 2) is above
    return j % 2 == 1


def render_meander(f, spec: DiagramSpec = DiagramSpec(kind="meander")) -> str:
    """Road W->E with bridges at stack positions, river crossing them in label order."""
    listing = _listing(f)
    if not is_meander(listing):
        raise RenderError("%s is not a meander" % (listing,))
    n = len(listing)
    pos = [0] * (n + 1)
    for i, label in enumerate(listing, 1):
        pos[label] = i
    c = spec.cell
    half = (n + 1) * c / 2  # exceeds every arc radius
    width = (n + 1) * c
    height = 2 * half + 2 * c
    road = half + c
    top, bottom = c / 2, height - c / 2

    def x(position: int) -> float:
        return position * c

    d = ["M%s %s V%s" % (_num(x(pos[1])), _num(bottom), _num(road))]
    for j in range(1, n):
        xa, xb = x(pos[j]), x(pos[j + 1])
        r = abs(xb - xa) / 2
        above = river_goes_above(j)
        sweep = int((xb > xa) == above)
        d.append("A%s %s 0 0 %d %s %s" % (_num(r), _num(r), sweep, _num(xb), _num(road)))
    # after the last bridge the river leaves on the side opposite its last arc
    leaves_above = not river_goes_above(n - 1) if n > 1 else True
    d.append("V%s" % _num(top if leaves_above else bottom))

    out = [SVG_HEADER,
           '<svg xmlns="%s" version="1.1" width="%d" height="%s" viewBox="0 0 %d %s">\n'
           % (SVG_NS, width, _num(height), width, _num(height)),
           '<line class="road" x1="0" y1="%s" x2="%d" y2="%s" stroke="gray" stroke-width="3"/>\n'
           % (_num(road), width, _num(road)),
           '<path class="river" d="%s" fill="none" stroke="blue" stroke-width="2"/>\n'
           % escape(" ".join(d))]
    if spec.labeled:
        out.append('<g class="bridges" font-family="monospace" font-size="%d" text-anchor="start">\n'
                   % max(c // 2, 6))
        for label in range(1, n + 1):
            out.append('<text x="%s" y="%s">%d</text>\n'
                       % (_num(x(pos[label]) + 2), _num(road - 2), label))
        out.append('</g>\n')
    out.append('</svg>\n')
    return "".join(out)


def ascii_meander(f) -> str:
    """Arc list of the river, one line per arc, for quick inspection."""
    listing = _listing(f)
    if not is_meander(listing):
        raise RenderError("%s is not a meander" % (listing,))
    pos = {label: i for i, label in enumerate(listing, 1)}
    n = len(listing)
    lines = ["bridges: " + " ".join(str(listing[i]) for i in range(n))]
    for j in range(1, n):
        where = "above" if river_goes_above(j) else "below"
        lines.append("%d -> %d  %s  (%d..%d)" % (j, j + 1, where, pos[j], pos[j + 1]))
    return "\n".join(lines) + "\n"
