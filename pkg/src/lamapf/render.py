"""SVG 1.1 drawing of an instance: vertices, edges and start disks to scale."""

from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

from .instance import first_vertex_conflict

ZONE_LETTERS = "ABCDEFGHIJKL"
_ZONE_FILL = ("#f4f4ff", "#fff4f4")


def _num(v):
    v = float(v)
    return str(int(v)) if v.is_integer() else repr(round(v, 6))


def render_svg(inst, scale=10, zones=False):
    """Return ``(svg_text, warnings)``.

    The y axis is flipped so that larger plane y is drawn higher.  Overlapping
    start disks are reported as warnings; rendering never refuses an instance.
    """
    if scale <= 0:
        raise ValueError("scale must be positive")
    warnings = []
    pair = first_vertex_conflict(inst, inst.start)
    if pair is not None:
        a, b = (inst.agents[i].label for i in pair)
        warnings.append(f"start disks of {a} and {b} overlap")

    r = inst.radius
    xs = [p.x for p in inst.positions]
    ys = [p.y for p in inst.positions]
    minx, maxx, miny, maxy = min(xs) - r, max(xs) + r, min(ys) - r, max(ys) + r
    width = (maxx - minx) * scale
    height = (maxy - miny) * scale

    def sx(x):
        return _num((x - minx) * scale)

    def sy(y):
        return _num((maxy - y) * scale)

    dot = _num(max(scale * min(r, 1) * 0.15, 0.5))
    font = _num(max(scale * 0.6, 4))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">',
        '<rect class="background" x="0" y="0" width="100%" height="100%" fill="white"/>',
    ]
    if zones:
        bands = {}
        for v in inst.vertices:
            z = v.label[:1]
            if z in ZONE_LETTERS:
                lo, hi = bands.get(z, (v.pos.y, v.pos.y))
                bands[z] = (min(lo, v.pos.y), max(hi, v.pos.y))
        for k, z in enumerate(sorted(bands)):
            lo, hi = bands[z]
            top, bottom = (maxy - hi) * scale, (maxy - lo) * scale
            pad = scale * 0.5
            out.append(f'<rect class="zone" data-zone="{z}" x="0" y="{_num(top - pad)}" width="{_num(width)}" '
                       f'height="{_num(bottom - top + 2 * pad)}" fill="{_ZONE_FILL[k % 2]}"/>')
            out.append(f'<text class="zone-label" x="{_num(scale * 0.2)}" y="{_num(top)}" font-size="{font}">'
                       f'{z}</text>')
    pos = inst.positions
    for u, w in sorted(inst.edges):
        out.append(f'<line class="edge" x1="{sx(pos[u].x)}" y1="{sy(pos[u].y)}" x2="{sx(pos[w].x)}" '
                   f'y2="{sy(pos[w].y)}" stroke="#555" stroke-width="{dot}"/>')
    for a in inst.agents:
        p = pos[a.start]
        out.append(f'<circle class="agent" data-agent={quoteattr(a.label)} cx="{sx(p.x)}" cy="{sy(p.y)}" '
                   f'r="{_num(r * scale)}" fill="#3a7bd5" fill-opacity="0.25" stroke="#3a7bd5">'
                   f'<title>{escape(a.label)}</title></circle>')
    for v in inst.vertices:
        out.append(f'<circle class="vertex" cx="{sx(v.pos.x)}" cy="{sy(v.pos.y)}" r="{dot}" fill="black"/>')
        out.append(f'<text class="label" x="{sx(v.pos.x)}" y="{sy(v.pos.y)}" dx="{dot}" font-size="{font}">'
                   f'{escape(v.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n", warnings
