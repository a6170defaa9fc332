"""Multiple alignments: construction, scoring, flattening and production.

An alignment arranges one new pattern and any number of old patterns in
rows, with matched symbols sharing a column.  Alignments are grown in
stages: the best alignments so far are treated as basic patterns (one
symbol per column) and matched against the stored patterns, each good hit
sequence yielding a merged alignment with one more row.  Ranking is by the
compression difference CD = B_N - B_E, where B_N is the bit cost of the
new symbols the alignment encodes and B_E the bit cost of its code.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

from .codetable import CodeTable
from .match import find_hit_sequences
from .patterns import Pattern, PatternStore, Role


@dataclass(frozen=True)
class RowEntry:
    pattern: Pattern
    cols: tuple[int, ...]  # column index per symbol position, strictly increasing


@dataclass(frozen=True)
class MultipleAlignment:
    rows: tuple[RowEntry, ...]
    col_syms: tuple[int, ...]
    new_row_index: int = 0

    @property
    def ncols(self) -> int:
        return len(self.col_syms)

    def columns(self) -> list[list[tuple[int, int]]]:
        """Cells per column as (row_index, position) pairs."""
        cols: list[list[tuple[int, int]]] = [[] for _ in range(self.ncols)]
        for ri, row in enumerate(self.rows):
            for pos, c in enumerate(row.cols):
                cols[c].append((ri, pos))
        return cols

    @property
    def new_pattern(self) -> Pattern:
        return self.rows[self.new_row_index].pattern


@dataclass(frozen=True)
class ScoredAlignment:
    alignment: MultipleAlignment
    code: tuple[int, ...]
    B_N: float
    B_E: float
    CD: float
    CR: float


@dataclass
class AlignParams:
    beam_driving: int = 20
    beam_target: int = 200
    max_alignments: int = 100
    budget: int = 10_000  # hit-structure node budget per match task
    max_hit_sequences: int = 4  # alternatives kept per driver/target pair
    max_stages: int = 30
    patience: int = 4  # stop after this many stages without a better best CD
    gap_penalty: float = 0.1
    # Prefer driving alignments that leave few of their own stored contents
    # symbols dangling.  Right for recognition, where an analysis should
    # account for the material its rows assert; wrong for production, where
    # the dangling contents are the surface being generated.
    prefer_explained: bool = True


def seed_alignment(new: Pattern) -> MultipleAlignment:
    cols = tuple(range(len(new)))
    return MultipleAlignment((RowEntry(new, cols),), tuple(new.symbols), 0)


def validate_alignment(aln: MultipleAlignment) -> None:
    """Raise if the alignment violates a structural invariant."""
    new_rows = [ri for ri, row in enumerate(aln.rows) if row.pattern.role is Role.NEW]
    if new_rows != [aln.new_row_index]:
        raise ValueError("alignment must hold exactly one new-role row")
    seen = [False] * aln.ncols
    for row in aln.rows:
        if list(row.cols) != sorted(set(row.cols)):
            raise ValueError("row columns must strictly increase")
        for pos, c in enumerate(row.cols):
            if aln.col_syms[c] != row.pattern.symbols[pos]:
                raise ValueError("column holds mixed symbol types")
            seen[c] = True
    if not all(seen):
        raise ValueError("empty column")


def column_order_masks(aln: MultipleAlignment) -> list[int]:
    """Per-column bitmask of the columns that must precede it.

    The binding order inside an alignment is only the union of its row
    chains: columns holding unmatched symbols of different rows are
    mutually unordered, and the stored column list is just one admissible
    arrangement of them.  These masks express the real (partial) order for
    the matcher."""
    preds: list[list[int]] = [[] for _ in range(aln.ncols)]
    for row in aln.rows:
        for a, b in zip(row.cols, row.cols[1:]):
            preds[b].append(a)
    masks = [0] * aln.ncols
    for c in range(aln.ncols):  # stored order is topological: preds are smaller
        m = 0
        for p in preds[c]:
            m |= masks[p] | (1 << p)
        masks[c] = m
    return masks


def merge_row(
    aln: MultipleAlignment, pattern: Pattern, hits: tuple[tuple[int, int], ...]
) -> MultipleAlignment:
    """Add ``pattern`` as a new row, unifying the hit positions with the
    hit columns.

    Hit columns need not follow the stored column order, only the partial
    order of the row chains (see ``column_order_masks``).  Unmatched
    symbols get fresh columns chained between their neighbouring hits, and
    the full column set is re-sorted topologically: existing columns keep
    their relative order where the chains allow, and a fresh column sits as
    close after the hit preceding it as the chains admit."""
    if not hits:
        raise ValueError("cannot merge with an empty hit sequence")
    hits = tuple(sorted(hits, key=lambda cp: cp[1]))
    n_old = aln.ncols
    hit_for_pos = {p: c for c, p in hits}

    # column ids: existing columns keep 0..n_old-1, fresh ones follow
    syms: dict[int, int] = dict(enumerate(aln.col_syms))
    sort_key: dict[int, tuple] = {c: (c, 0, 0) for c in range(n_old)}
    new_row_cols: list[int] = []
    next_id = n_old
    prev_hit_col = -1
    for p in range(len(pattern)):
        if p in hit_for_pos:
            prev_hit_col = hit_for_pos[p]
            new_row_cols.append(prev_hit_col)
        else:
            syms[next_id] = pattern.symbols[p]
            sort_key[next_id] = (prev_hit_col, 1, p)
            new_row_cols.append(next_id)
            next_id += 1

    chains = [row.cols for row in aln.rows] + [tuple(new_row_cols)]
    indeg = [0] * next_id
    succ: list[list[int]] = [[] for _ in range(next_id)]
    edges: set[tuple[int, int]] = set()
    for chain in chains:
        for a, b in zip(chain, chain[1:]):
            if (a, b) not in edges:
                edges.add((a, b))
                succ[a].append(b)
                indeg[b] += 1
    ready = [(sort_key[c], c) for c in range(next_id) if indeg[c] == 0]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        _, c = heapq.heappop(ready)
        order.append(c)
        for b in succ[c]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(ready, (sort_key[b], b))
    if len(order) != next_id:
        raise ValueError("hit sequence conflicts with the alignment's row order")
    remap = {c: i for i, c in enumerate(order)}

    rows = tuple(
        RowEntry(row.pattern, tuple(remap[c] for c in row.cols)) for row in aln.rows
    ) + (RowEntry(pattern, tuple(remap[c] for c in new_row_cols)),)
    return MultipleAlignment(
        rows, tuple(syms[c] for c in order), aln.new_row_index
    )


def canonical_arrangement(aln: MultipleAlignment) -> MultipleAlignment:
    """Rearrange mutually unordered columns into a canonical, readable order.

    The merge history leaves the free columns wherever the incremental sort
    dropped them, which can interleave unrelated constituents (and produce a
    code pattern that decodes badly).  Here every column gets a virtual
    position on the new row's axis: the position just before its earliest
    new-symbol successor, or failing that just after its latest new-symbol
    predecessor; columns attached to no new symbol at all go last.  A
    topological sort by virtual position then keeps each constituent's
    columns packed around the material they describe."""
    n = aln.ncols
    masks = column_order_masks(aln)
    newpos: dict[int, int] = {}
    for pos, c in enumerate(aln.rows[aln.new_row_index].cols):
        newpos[c] = pos
    virt = [0.0] * n
    for c in range(n):
        if c in newpos:
            virt[c] = float(newpos[c])
            continue
        succ = min(
            (p for c2, p in newpos.items() if masks[c2] >> c & 1), default=None
        )
        if succ is not None:
            virt[c] = succ - 0.25
            continue
        pred = max(
            (p for c2, p in newpos.items() if masks[c] >> c2 & 1), default=None
        )
        virt[c] = pred + 0.25 if pred is not None else float(n + c)

    indeg = [0] * n
    succs: list[list[int]] = [[] for _ in range(n)]
    edges: set[tuple[int, int]] = set()
    for row in aln.rows:
        for a, b in zip(row.cols, row.cols[1:]):
            if (a, b) not in edges:
                edges.add((a, b))
                succs[a].append(b)
                indeg[b] += 1
    ready = [(virt[c], c) for c in range(n) if indeg[c] == 0]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        _, c = heapq.heappop(ready)
        order.append(c)
        for b in succs[c]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(ready, (virt[b], b))
    remap = {c: i for i, c in enumerate(order)}
    rows = tuple(
        RowEntry(row.pattern, tuple(remap[c] for c in row.cols))
        for row in aln.rows
    )
    return MultipleAlignment(
        rows, tuple(aln.col_syms[c] for c in order), aln.new_row_index
    )


def derive_code_pattern(aln: MultipleAlignment, is_id: list[bool]) -> tuple[int, ...]:
    """Left-to-right scan: the symbol of every column holding a single,
    unaligned identification symbol from an old pattern.  Unmatched New
    symbols are not part of the code; they are costed separately when
    generalised encoding lengths are wanted."""
    counts = [0] * aln.ncols
    for row in aln.rows:
        for c in row.cols:
            counts[c] += 1
    new_cols = set(aln.rows[aln.new_row_index].cols)
    return tuple(
        sym
        for c, sym in enumerate(aln.col_syms)
        if counts[c] == 1 and is_id[sym] and c not in new_cols
    )


def compression_scores(
    aln: MultipleAlignment, table: CodeTable, is_id: list[bool]
) -> ScoredAlignment:
    code = derive_code_pattern(aln, is_id)
    b_e = table.pattern_bits(code)
    old_cells = [0] * aln.ncols
    for ri, row in enumerate(aln.rows):
        if ri == aln.new_row_index:
            continue
        for c in row.cols:
            old_cells[c] += 1
    new_row = aln.rows[aln.new_row_index]
    b_n = sum(
        table.size(sym)
        for sym, c in zip(new_row.pattern.symbols, new_row.cols)
        if old_cells[c]
    )
    cd = b_n - b_e
    cr = math.inf if b_e == 0 else b_n / b_e
    return ScoredAlignment(aln, code, b_n, b_e, cd, cr)


def matched_new_positions(aln: MultipleAlignment) -> frozenset[int]:
    """Positions of the new pattern that sit in a column with an old cell."""
    old_cells = set()
    for ri, row in enumerate(aln.rows):
        if ri != aln.new_row_index:
            old_cells.update(row.cols)
    new_row = aln.rows[aln.new_row_index]
    return frozenset(p for p, c in enumerate(new_row.cols) if c in old_cells)


@dataclass(frozen=True)
class FlattenedPattern:
    """An alignment viewed as a basic pattern, one symbol per column."""

    pattern: Pattern
    source: MultipleAlignment

    def expand(self) -> MultipleAlignment:
        return self.source


def flatten_alignment(aln: MultipleAlignment) -> FlattenedPattern:
    role = aln.new_pattern.role
    return FlattenedPattern(Pattern(aln.col_syms, role, label="flattened"), aln)


def _signature(aln: MultipleAlignment, pattern_rank: dict[int, int]):
    """Content signature, invariant under row order and under the choice of
    admissible column arrangement.

    Columns are compared as a sorted multiset of cell sets: the binding
    order between columns comes entirely from the row chains, so alignments
    with equal cell sets are the same alignment however their mutually
    unordered columns happen to be arranged."""
    cols = aln.columns()
    return tuple(
        sorted(
            tuple(
                sorted(
                    (pattern_rank.get(id(aln.rows[ri].pattern), -1), pos)
                    for ri, pos in cells
                )
            )
            for cells in cols
        )
    )


def _rank_key(sa: ScoredAlignment, names) -> tuple:
    # Fewer columns last: of two alignments with equal score, rows and code,
    # the one that unifies more cells is the tighter reading.
    return (
        -sa.CD,
        len(sa.alignment.rows),
        tuple(names(sa.code)),
        len(sa.alignment.col_syms),
    )


def _unexplained(sa: ScoredAlignment) -> int:
    """Stored contents symbols the alignment asserts but unifies with
    nothing.  Dangling identification symbols are already priced into the
    code, so only contents columns count."""
    solitary_old = 0
    aln = sa.alignment
    for cells in aln.columns():
        if len(cells) == 1 and cells[0][0] != aln.new_row_index:
            solitary_old += 1
    return solitary_old - len(sa.code)


def _stratified(
    scored: list[ScoredAlignment],
    k: int,
    names,
    picked_rowsets: set[tuple] | None = None,
    prefer_explained: bool = True,
) -> list[ScoredAlignment]:
    """Pick up to ``k`` alignments, round-robin across strata of equal
    New-symbol coverage (most-covered stratum first, best CD within each).

    Plain best-by-CD selection starves partially built alignments: a junk
    alignment that happens to close early can outscore every intermediate
    state of the alignment that would eventually win.  Keeping the best of
    every coverage level alive lets those intermediates keep growing.

    Within a stratum, picks alternate between best-scored and
    oldest-created (``scored`` arrives in creation order).  The score
    picks — fewest unexplained stored contents symbols, then best CD —
    exploit, favouring lineages that integrate the material their own
    rows assert; the age picks guarantee every early state is eventually
    driven even when newer states keep arriving with better scores.  Both
    queues prefer candidates built from a row set not already picked this
    round: structural rearrangements of one row set explore the same
    ground, so spending the beam on them starves rarer combinations."""
    strata: dict[int, list[ScoredAlignment]] = {}
    for sa in scored:
        strata.setdefault(len(matched_new_positions(sa.alignment)), []).append(sa)
    queues = []
    if prefer_explained:
        unexplained = {id(sa): _unexplained(sa) for sa in scored}
        score_key = lambda sa: (unexplained[id(sa)],) + _rank_key(sa, names)
    else:
        score_key = lambda sa: _rank_key(sa, names)
    for cov in sorted(strata, reverse=True):
        by_cd = sorted(strata[cov], key=score_key)
        queues.append((by_cd, strata[cov]))
    rowset = {
        id(sa): tuple(sorted(id(row.pattern) for row in sa.alignment.rows))
        for sa in scored
    }
    out: list[ScoredAlignment] = []
    chosen: set[int] = set()
    if picked_rowsets is None:
        picked_rowsets = set()
    depth = 0
    while len(out) < k:
        took = False
        for by_cd, by_age in queues:
            q = by_cd if depth % 2 == 0 else by_age
            pick = None
            for sa in q:
                if id(sa) in chosen:
                    continue
                if pick is None:
                    pick = sa
                if rowset[id(sa)] not in picked_rowsets:
                    pick = sa
                    break
            if pick is not None:
                chosen.add(id(pick))
                picked_rowsets.add(rowset[id(pick)])
                out.append(pick)
                took = True
            if len(out) == k:
                break
        if not took:
            break
        depth += 1
    return out


# Occurrence kinds within an old pattern, used to keep column unification
# meaningful: a pattern's leading symbol defines it, a trailing '#'-closer
# ends it, an interior ID with its own later '#'-closer opens a slot (a
# variable region another pattern may fill), the '#'-symbol ending a slot
# closes it, other ID symbols are plain references, and contents symbols
# carry raw data.
_DEF0, _CLOSER, _SLOT, _SLOT_END, _REF, _CONTENTS = range(6)


def _partner_positions(pattern: Pattern, is_id, name) -> dict[int, int]:
    """Pair each slot-opening ID occurrence with the '#'-closer ending its
    region, innermost first (the bracket pair of a bracketed pattern is the
    outermost such pair).  Both directions are present in the map."""
    out: dict[int, int] = {}
    open_stacks: dict[str, list[int]] = {}
    for p, sym in enumerate(pattern.symbols):
        if not is_id[sym]:
            continue
        nm = name(sym)
        if nm.startswith("#"):
            stack = open_stacks.get(nm[1:])
            if stack:
                q = stack.pop()
                out[q] = p
                out[p] = q
        else:
            open_stacks.setdefault(nm, []).append(p)
    return out


def _occurrence_kinds(pattern: Pattern, is_id, name) -> tuple[tuple[int, ...], bool]:
    n = len(pattern.symbols)
    first = name(pattern.symbols[0])
    bracketed = n > 1 and name(pattern.symbols[-1]) == "#" + first
    partners = _partner_positions(pattern, is_id, name)
    kinds = []
    for pos, sym in enumerate(pattern.symbols):
        if not is_id[sym]:
            kinds.append(_CONTENTS)
        elif pos == 0:
            kinds.append(_DEF0)
        elif pos == n - 1 and bracketed:
            kinds.append(_CLOSER)
        elif pos in partners:
            kinds.append(_SLOT_END if name(sym).startswith("#") else _SLOT)
        else:
            kinds.append(_REF)
    return tuple(kinds), bracketed


def _column_cells_valid(cells: list[tuple[int, bool]]) -> bool:
    """Whether a column's old-row cells, given as (kind, pattern-bracketed)
    pairs, form a meaningful unification.

    Raw contents may be restated by one other pattern (the producing and
    consuming ends of a handed-over value); a closing bracket
    identifies one constituent, so two of them cannot merge; a plain
    reference must resolve to a definition, and one definition satisfies at
    most one such reference; slots nest transparently, so any number may
    stack; and two pattern-initial symbols co-refer only when neither
    pattern is a bracketed constituent."""
    if len(cells) < 2:
        return True
    contents = closers = defs0 = refs = 0
    bracketed_def = False
    for kind, bracketed in cells:
        if kind == _CONTENTS:
            contents += 1
        elif kind == _CLOSER:
            closers += 1
        elif kind == _DEF0:
            defs0 += 1
            bracketed_def = bracketed_def or bracketed
        elif kind == _REF:
            refs += 1
    if contents > 2 or closers > 1 or refs > 1:
        return False
    if refs and not (defs0 or closers):
        return False
    if defs0 > 1 and bracketed_def:
        return False
    return True


def _coreference_complete(aln: MultipleAlignment, kinds) -> bool:
    """Whether every pattern-initial coreference in the alignment is earned.

    Two unbracketed patterns may share their initial symbol — assert that
    they describe the same event — only when every symbol of both rows is
    unified with something.  Otherwise the pair identifies itself for free
    while asserting material nothing in the alignment supports."""
    cols = aln.columns()
    covered = {
        (ri, pos) for cells in cols if len(cells) >= 2 for ri, pos in cells
    }
    for cells in cols:
        def0_rows = [
            ri
            for ri, pos in cells
            if ri != aln.new_row_index
            and kinds[id(aln.rows[ri].pattern)][0][pos] == _DEF0
        ]
        if len(def0_rows) < 2:
            continue
        for ri in def0_rows:
            n = len(aln.rows[ri].pattern)
            if not all((ri, p) in covered for p in range(n)):
                return False
    return True


def _self_supporting(
    aln: MultipleAlignment,
    columns: list[list[tuple[int, int]]],
    pattern: Pattern,
    hits,
) -> bool:
    """True when any hit unifies with a cell of an identical pattern at the
    same position.  Such merges let two copies of one pattern vouch for each
    other's identification symbols, faking compression; they are rejected.
    (The same pattern twice at *different* positions stays legal, which is
    what recursive structure needs.)"""
    for c, p in hits:
        for ri, pos in columns[c]:
            if pos == p and aln.rows[ri].pattern.symbols == pattern.symbols:
                return True
    return False


def build_alignments(
    new: Pattern,
    store: PatternStore,
    table: CodeTable,
    params: AlignParams | None = None,
) -> list[ScoredAlignment]:
    """Staged beam search for good alignments of ``new`` against the store.

    Stage 0 matches the new pattern against every old pattern; later stages
    match the best alignments so far, flattened, against the store again.
    Returns up to ``max_alignments`` scored alignments, best CD first.
    """
    if params is None:
        params = AlignParams()
    is_id = store.is_id()
    weights = table.sizes
    pattern_rank = {id(p): i for i, p in enumerate(store.old_patterns)}
    old_symbol_sets = [frozenset(p.symbols) for p in store.old_patterns]
    names = store.table.names
    kinds = {
        id(p): _occurrence_kinds(p, is_id, store.table.name)
        for p in store.old_patterns
    }
    partners = {
        id(p): _partner_positions(p, is_id, store.table.name)
        for p in store.old_patterns
    }

    def _merge_ok(aln, columns, pat, hits):
        pat_kinds, pat_br = kinds[id(pat)]
        pat_partners = partners[id(pat)]
        hitmap = {p: c for c, p in hits}
        for c, p in hits:
            cells = []
            for ri, pos in columns[c]:
                if ri == aln.new_row_index:
                    continue
                row = aln.rows[ri]
                row_kinds, row_br = kinds[id(row.pattern)]
                cells.append((row_kinds[pos], row_br))
                # Two patterns of the same class restating each other's raw
                # contents is fake compression: near-identical variants of
                # one definition would absorb each other's material and
                # appear to explain it.  A contents hand-over is only
                # meaningful between patterns of different classes.
                if (
                    pat_kinds[p] == _CONTENTS
                    and row_kinds[pos] == _CONTENTS
                    and row.pattern.symbols[0] == pat.symbols[0]
                ):
                    return False
                # Paired-boundary completion: when both cells belong to an
                # opener/closer pair (a slot, or a bracketed pattern's
                # frame), the two partner positions must unify in the same
                # merge — two existing columns can never unify afterwards,
                # so deferring would permanently wall the regions apart.
                pq = pat_partners.get(p)
                rq = partners[id(row.pattern)].get(pos)
                if pq is not None and rq is not None:
                    if hitmap.get(pq) != row.cols[rq]:
                        return False
            cells.append((pat_kinds[p], pat_br))
            if not _column_cells_valid(cells):
                return False
        return True

    repo: dict[tuple, ScoredAlignment] = {}
    seen: set[tuple] = set()  # every signature ever built, pruned or not
    driven: set[int] = set()  # id() of alignments already used as drivers
    driven_rowsets: set[tuple] = set()  # row sets ever chosen for driving
    frontier: list[MultipleAlignment] = [seed_alignment(new)]
    best_cd = float("-inf")
    stale = 0

    for _stage in range(params.max_stages):
        for aln in frontier:
            driven.add(id(aln))
            flat_syms = aln.col_syms
            flat_set = set(flat_syms)
            columns = aln.columns()
            masks = column_order_masks(aln)
            for pat, pat_syms in zip(store.old_patterns, old_symbol_sets):
                if flat_set.isdisjoint(pat_syms):
                    continue
                seqs = find_hit_sequences(
                    pat.symbols,
                    flat_syms,
                    weights,
                    node_budget=params.budget,
                    gap_penalty=params.gap_penalty,
                    db_before=masks,
                )
                accepted = 0
                accepted_hits: list[frozenset] = []
                for hs in seqs:
                    if accepted >= params.max_hit_sequences:
                        break
                    hits = tuple((c, p) for p, c in hs.hits)
                    # A strict subset of an already-merged hit sequence just
                    # re-adds the same row with fewer unifications — noise
                    # that dilutes the probability calculations downstream.
                    hset = frozenset(hits)
                    if any(hset <= done_set for done_set in accepted_hits):
                        continue
                    if _self_supporting(aln, columns, pat, hits):
                        continue
                    if not _merge_ok(aln, columns, pat, hits):
                        continue
                    merged = merge_row(aln, pat, hits)
                    if not _coreference_complete(merged, kinds):
                        continue
                    accepted_hits.append(hset)
                    sig = _signature(merged, pattern_rank)
                    if sig in seen:
                        continue
                    seen.add(sig)
                    scored = compression_scores(merged, table, is_id)
                    if scored.B_N == 0:
                        continue
                    accepted += 1
                    repo[sig] = scored
        if len(repo) > params.beam_target:
            # Trim only states that have already served as drivers; dropping
            # an undriven state here would kill its whole line of descent,
            # because ``seen`` stops it from ever being rebuilt.
            done = [sa for sa in repo.values() if id(sa.alignment) in driven]
            if len(done) > params.beam_target:
                keep_ids = {
                    id(sa)
                    for sa in _stratified(
                        done,
                        params.beam_target,
                        names,
                        prefer_explained=params.prefer_explained,
                    )
                }
                repo = {
                    sig: sa
                    for sig, sa in repo.items()
                    if id(sa) in keep_ids or id(sa.alignment) not in driven
                }
        stage_best = max((sa.CD for sa in repo.values()), default=float("-inf"))
        if stage_best > best_cd:
            best_cd = stage_best
            stale = 0
        else:
            stale += 1
            if stale >= params.patience:
                break
        undriven = [sa for sa in repo.values() if id(sa.alignment) not in driven]
        if not undriven:
            break
        frontier = [
            sa.alignment
            for sa in _stratified(
                undriven,
                params.beam_driving,
                names,
                driven_rowsets,
                prefer_explained=params.prefer_explained,
            )
        ]

    finished = [
        compression_scores(canonical_arrangement(sa.alignment), table, is_id)
        for sa in repo.values()
    ]
    results = sorted(finished, key=lambda sa: _rank_key(sa, names))
    return results[: params.max_alignments]


def produce_from_code(
    code: Pattern,
    store: PatternStore,
    table: CodeTable,
    params: AlignParams | None = None,
) -> ScoredAlignment | None:
    """Rebuild the original pattern by aligning its code against the store.

    Codes are short and carry little redundancy, so the search improves in
    bursts separated by long flat stretches; the default parameters here
    run every stage rather than stopping on a stale best score.
    """
    if params is None:
        params = AlignParams(patience=10, prefer_explained=False)
    results = build_alignments(code, store, table, params)
    return results[0] if results else None


def surface_sequence(sa: ScoredAlignment, store: PatternStore) -> list[int]:
    """The contents-symbol sequence of the alignment, in column order."""
    is_id = store.is_id()
    return [sym for sym in sa.alignment.col_syms if not is_id[sym]]
