"""Text and SVG pictures of puzzles and their solutions. Presentation only."""

from __future__ import annotations

from html import escape
from string import ascii_letters, digits

from .letterboxed import LetterBoxedPuzzle, LetterBoxedSolution
from .pips import PipsPuzzle
from .strands import StrandsInstance
from .tiles import TilesInstance

_LABELS = ascii_letters + digits
CELL = 40


def _label(i: int) -> str:
    return _LABELS[i % len(_LABELS)]


def letterboxed_ascii(p: LetterBoxedPuzzle, sol: LetterBoxedSolution | None = None) -> str:
    lines = [f"side {i + 1}: {' '.join(s)}" for i, s in enumerate(p.sides)]
    lines.append(f"dictionary: {len(p.dictionary)} words, longest {p.max_word_length}")
    if sol is not None:
        for w in sol.words:
            lines.append("  " + " ".join(p.dictionary[w]))
    return "\n".join(lines) + "\n"


def pips_ascii(p: PipsPuzzle, placement=None) -> str:
    """Board map: constraint regions as letters, ``.`` for free cells; values if placed."""
    if not p.cells:
        return "(empty board)\n"
    rows = [r for r, _ in p.cells]
    cols = [c for _, c in p.cells]
    r0, c0 = min(rows), min(cols)
    region = {}
    for i, con in enumerate(p.constraints):
        for cell in con.region:
            region[cell] = _label(i)
    value = {}
    for _i, a, b, va, vb in placement or ():
        value[tuple(a)], value[tuple(b)] = va, vb
    out = []
    for r in range(r0, max(rows) + 1):
        row = []
        for c in range(c0, max(cols) + 1):
            if (r, c) not in p.cells:
                row.append(" ")
            elif (r, c) in value:
                row.append(str(value[r, c]) if value[r, c] < 10 else "+")
            else:
                row.append(region.get((r, c), "."))
        out.append("".join(row).rstrip())
    legend = []
    for i, con in enumerate(p.constraints):
        legend.append(f"{_label(i)}: {con.kind}" + ("" if con.n is None else f" {con.n}"))
    return "\n".join(out + legend) + "\n"


def strands_ascii(inst: StrandsInstance, partition=None) -> str:
    width = max(len(s) for row in inst.grid for s in row)
    lines = [" ".join(s.ljust(width) for s in row).rstrip() for row in inst.grid]
    if partition is not None:
        owner = {}
        for i, (_w, path) in enumerate(partition):
            for cell in path:
                owner[tuple(cell)] = _label(i)
        lines.append("")
        for r in range(inst.rows):
            lines.append(" ".join(owner.get((r, c), "?") for c in range(inst.cols)))
    return "\n".join(lines) + "\n"


def tiles_ascii(inst: TilesInstance, moves=None) -> str:
    lines = [f"tile {i}: {' '.join(sorted(t)) or '-'}" for i, t in enumerate(inst.tiles)]
    if moves is not None:
        lines.append("moves: " + " ".join(str(m) for m in moves))
    return "\n".join(lines) + "\n"


def _svg(width: int, height: int, body: list[str]) -> str:
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n' + "\n".join(body) + "\n</svg>\n"
    )


def pips_svg(p: PipsPuzzle, placement=None) -> str:
    """Unit squares, constraint regions outlined, values printed when placed."""
    r0 = min((r for r, _ in p.cells), default=0)
    c0 = min((c for _, c in p.cells), default=0)
    h = max((r for r, _ in p.cells), default=0) - r0 + 1
    w = max((c for _, c in p.cells), default=0) - c0 + 1

    def xy(cell):
        return (cell[1] - c0) * CELL + CELL, (cell[0] - r0) * CELL + CELL

    body = []
    for cell in sorted(p.cells):
        x, y = xy(cell)
        body.append(f'<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="#f4efe6" stroke="#999"/>')
    for i, con in enumerate(p.constraints):
        hue = (i * 67) % 360
        for cell in con.region:
            x, y = xy(cell)
            r, c = cell
            for nb, seg in (((r - 1, c), (x, y, x + CELL, y)), ((r + 1, c), (x, y + CELL, x + CELL, y + CELL)),
                            ((r, c - 1), (x, y, x, y + CELL)), ((r, c + 1), (x + CELL, y, x + CELL, y + CELL))):
                if nb not in con.region:
                    body.append(f'<line x1="{seg[0]}" y1="{seg[1]}" x2="{seg[2]}" y2="{seg[3]}" '
                                f'stroke="hsl({hue},70%,40%)" stroke-width="3"/>')
        x, y = xy(min(con.region))
        label = con.kind if con.n is None else f"{con.kind} {con.n}"
        body.append(f'<text x="{x + 2}" y="{y + 10}" font-size="9" fill="hsl({hue},70%,30%)">{escape(label)}</text>')
    for _i, a, b, va, vb in placement or ():
        (xa, ya), (xb, yb) = xy(a), xy(b)
        x, y = min(xa, xb) + 4, min(ya, yb) + 4
        bw = abs(xa - xb) + CELL - 8
        bh = abs(ya - yb) + CELL - 8
        body.append(f'<rect x="{x}" y="{y}" width="{bw}" height="{bh}" rx="6" fill="none" stroke="#222" stroke-width="2"/>')
        for (cx, cy), v in (((xa, ya), va), ((xb, yb), vb)):
            body.append(f'<text x="{cx + CELL // 2}" y="{cy + CELL // 2 + 5}" text-anchor="middle" font-size="14">{v}</text>')
    return _svg((w + 2) * CELL, (h + 2) * CELL, body)


def strands_svg(inst: StrandsInstance, partition=None) -> str:
    """Lettered cells with one polyline per word of the partition."""
    body = []
    for r in range(inst.rows):
        for c in range(inst.cols):
            x, y = c * CELL + CELL // 2, r * CELL + CELL // 2
            body.append(f'<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="#fff" stroke="#ccc"/>')
            body.append(f'<text x="{x + CELL // 2}" y="{y + CELL // 2 + 5}" text-anchor="middle" '
                        f'font-size="13">{escape(inst.grid[r][c])}</text>')
    for i, (_w, path) in enumerate(partition or ()):
        pts = " ".join(f"{c * CELL + CELL},{r * CELL + CELL}" for r, c in path)
        hue = (i * 47) % 360
        body.append(f'<polyline points="{pts}" fill="none" stroke="hsl({hue},70%,45%)" '
                    f'stroke-width="6" stroke-opacity="0.5" stroke-linecap="round"/>')
    return _svg((inst.cols + 1) * CELL, (inst.rows + 1) * CELL, body)
