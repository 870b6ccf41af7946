"""ASCII and SVG board rendering."""

from __future__ import annotations

from dataclasses import dataclass, field

from .board import Edge, GameState, HORIZONTAL, VERTICAL


@dataclass(frozen=True)
class RenderSpec:
    format: str = "ascii"  # "ascii" | "svg"
    cell: int = 12  # svg pixels per box
    overlay: dict = field(default=None, compare=False)  # gadget id -> box list


def render(s: GameState, spec: RenderSpec = RenderSpec()) -> str:
    if spec.format == "ascii":
        return render_ascii(s)
    if spec.format == "svg":
        return render_svg(s, spec)
    raise ValueError(f"unknown format {spec.format!r}")


def render_ascii(s: GameState) -> str:
    """Character grid: '+' dots, '-'/'|' drawn edges, box marks 'A'/'B' for
    captured boxes and '.' for boxes complete from the start."""
    w, h = s.width, s.height
    rows = [[" "] * (2 * w + 1) for _ in range(2 * h + 1)]
    for y in range(h + 1):
        for x in range(w + 1):
            rows[2 * y][2 * x] = "+"
    for e in s.drawn:
        if e.orient == HORIZONTAL:
            rows[2 * e.y][2 * e.x + 1] = "-"
        else:
            rows[2 * e.y + 1][2 * e.x] = "|"
    owners = s.owner_map()
    for b in s.boxes():
        bx, by = b
        if b in owners:
            rows[2 * by + 1][2 * bx + 1] = owners[b]
        elif s.is_complete(b):
            rows[2 * by + 1][2 * bx + 1] = "."
    return "\n".join("".join(r).rstrip() for r in rows) + "\n"


def render_svg(s: GameState, spec: RenderSpec = RenderSpec(format="svg")) -> str:
    c = spec.cell
    w, h = s.width, s.height
    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="0 0 {w * c + 2} {h * c + 2}">'
    )
    out.append('<g id="board" transform="translate(1,1)">')
    owners = s.owner_map()
    out.append('<g id="boxes">')
    for b in sorted(s.boxes()):
        bx, by = b
        if b in owners:
            fill = "#7bafd4" if owners[b] == "A" else "#d47b7b"
        elif s.is_complete(b):
            fill = "#dddddd"
        else:
            continue
        out.append(
            f'<rect x="{bx * c}" y="{by * c}" width="{c}" height="{c}" '
            f'fill="{fill}"/>'
        )
    out.append("</g>")
    if spec.overlay:
        out.append('<g id="overlay">')
        for gid in sorted(spec.overlay):
            boxes = spec.overlay[gid]
            xs = [b[0] for b in boxes]
            ys = [b[1] for b in boxes]
            out.append(
                f'<g id="region-{gid}"><rect x="{min(xs) * c}" y="{min(ys) * c}" '
                f'width="{(max(xs) - min(xs) + 1) * c}" '
                f'height="{(max(ys) - min(ys) + 1) * c}" '
                f'fill="none" stroke="#228822" stroke-dasharray="3,2"/></g>'
            )
        out.append("</g>")
    out.append('<g id="edges" stroke="#222222" stroke-width="1.5">')
    for e in sorted(s.drawn, key=lambda e: (e.orient, e.y, e.x)):
        if e.orient == HORIZONTAL:
            x1, y1, x2, y2 = e.x * c, e.y * c, (e.x + 1) * c, e.y * c
        else:
            x1, y1, x2, y2 = e.x * c, e.y * c, e.x * c, (e.y + 1) * c
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
    out.append("</g>")
    out.append('<g id="dots" fill="#000000">')
    for y in range(h + 1):
        for x in range(w + 1):
            out.append(f'<circle cx="{x * c}" cy="{y * c}" r="1.2"/>')
    out.append("</g>")
    out.append("</g></svg>")
    return "\n".join(out) + "\n"
