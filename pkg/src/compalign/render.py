"""Plain-text rendering of multiple alignments.

Two orientations are supported.  ``rows`` lays each pattern on its own text
line, with row indices in both margins and ``|`` connectors marking the
columns shared between rows on the interleaved lines.  ``columns`` lays
each pattern vertically, one text line per alignment column, with ``-``
connectors linking the cells a column unifies and pattern indices at top
and bottom.  Spacing is minimized subject to keeping every cell of a
column visually linked; output is deterministic and byte-stable.
"""

from __future__ import annotations

from .align import MultipleAlignment, ScoredAlignment
from .patterns import PatternStore

_COLUMN_GAP = 3  # spaces between pattern fields in the columns orientation


def render_alignment(
    sa: ScoredAlignment | MultipleAlignment,
    store: PatternStore,
    orientation: str = "rows",
) -> str:
    aln = sa.alignment if isinstance(sa, ScoredAlignment) else sa
    if orientation == "rows":
        return _render_rows(aln, store)
    if orientation == "columns":
        return _render_columns(aln, store)
    raise ValueError(f"unknown orientation {orientation!r}")


def _spans(aln: MultipleAlignment) -> list[tuple[int, int]]:
    """(first, last) occupied row per column."""
    out = []
    for cells in aln.columns():
        rows = [ri for ri, _ in cells]
        out.append((min(rows), max(rows)))
    return out


def _render_rows(aln: MultipleAlignment, store: PatternStore) -> str:
    names = [store.table.name(s) for s in aln.col_syms]
    nrows = len(aln.rows)
    margin = len(str(nrows - 1))
    xs: list[int] = []
    x = margin + 1
    for name in names:
        xs.append(x)
        x += len(name) + 1
    right = x  # one space after the last column, then the right-hand index
    spans = _spans(aln)
    cell_at = {}  # (row, col) -> True for occupied cells
    for ri, row in enumerate(aln.rows):
        for c in row.cols:
            cell_at[(ri, c)] = True

    def blank() -> list[str]:
        return [" "] * (right + margin)

    def put(line: list[str], x0: int, text: str) -> None:
        line[x0 : x0 + len(text)] = list(text)

    lines: list[str] = []
    for ri in range(nrows):
        line = blank()
        idx = str(ri)
        put(line, margin - len(idx), idx)
        put(line, right + margin - len(idx), idx)
        for c, name in enumerate(names):
            if (ri, c) in cell_at:
                put(line, xs[c], name)
            elif spans[c][0] < ri < spans[c][1]:
                line[xs[c]] = "|"
        lines.append("".join(line).rstrip())
        if ri < nrows - 1:
            conn = blank()
            for c in range(len(names)):
                if spans[c][0] <= ri < spans[c][1]:
                    conn[xs[c]] = "|"
            lines.append("".join(conn).rstrip())
    return "\n".join(lines) + "\n"


def _render_columns(aln: MultipleAlignment, store: PatternStore) -> str:
    name = store.table.name
    nrows = len(aln.rows)
    widths = [
        max(len(name(s)) for s in row.pattern.symbols) for row in aln.rows
    ]
    xs: list[int] = []
    x = 0
    for w in widths:
        xs.append(x)
        x += w + _COLUMN_GAP
    total = xs[-1] + widths[-1]

    def put(line: list[str], x0: int, text: str) -> None:
        line[x0 : x0 + len(text)] = list(text)

    header = [" "] * total
    for ri in range(nrows):
        put(header, xs[ri], str(ri))
    header_text = "".join(header).rstrip()

    lines = [header_text, ""]
    for ci, cells in enumerate(aln.columns()):
        sym = name(aln.col_syms[ci])
        line = [" "] * total
        occupied = sorted(ri for ri, _ in cells)
        for ri in occupied:
            put(line, xs[ri], sym)
        for a, b in zip(occupied, occupied[1:]):
            start = xs[a] + len(sym) + 1  # one space after the left cell
            end = xs[b] - 1  # exclusive; one space before the right cell
            for i in range(start, end):
                line[i] = "-"
        lines.append("".join(line).rstrip())
    lines.append("")
    lines.append(header_text)
    return "\n".join(lines) + "\n"
