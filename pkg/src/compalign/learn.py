"""Unsupervised grammar learning by minimum-length-encoding search.

Incoming patterns are absorbed one at a time.  Each can be stored as a
plain copy, recognised by the grammar built so far, or split against a
partially-matching stored pattern into chunk patterns (fully matched runs),
variant patterns (the unmatched material on either side of a gap, grouped
under one fresh class) and an abstract pattern stringing the classes
together.  Candidate grammars form a tree that branches on alternative
alignments and is pruned by T = G + E: the cost of the grammar plus the
cost of the corpus encoded in terms of it.

Cost conventions: an unencoded symbol is literal text at RAW_BITS_PER_CHAR
bits per character; grammar contents symbols are coded against the
grammar's frequency table; service symbols (class marks, discriminators,
'#'-closers) are system bookkeeping and are charged at their aggregate
rate, log2(symbols / service symbols), per occurrence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .align import (
    AlignParams,
    MultipleAlignment,
    ScoredAlignment,
    build_alignments,
    column_order_masks,
    matched_new_positions,
)
from .codetable import CodeTable, CostModel, compute_code_sizes
from .patterns import Pattern, PatternStore, Role

RAW_BITS_PER_CHAR = 8.0

#: Alignment search settings used inside learning: corpora are short, the
#: grammars small, and the search runs once per candidate grammar per
#: sentence, so a narrow fast beam wins.
LEARN_ALIGN_PARAMS = AlignParams(
    beam_driving=8,
    beam_target=40,
    max_alignments=20,
    patience=2,
    max_stages=8,
)


@dataclass(frozen=True)
class GrammarPattern:
    """One stored pattern of a candidate grammar, at the token level."""

    symbols: tuple[str, ...]
    frequency: int = 1


@dataclass(frozen=True)
class Grammar:
    """A candidate set of stored patterns with its evaluation."""

    patterns: tuple[GrammarPattern, ...]
    id_names: frozenset[str]
    G: float = 0.0
    E: float = 0.0

    @property
    def T(self) -> float:
        return self.G + self.E

    def key(self) -> tuple:
        return tuple(sorted((p.symbols, p.frequency) for p in self.patterns))


@dataclass(frozen=True)
class MetricsRecord:
    """Best-grammar costs after absorbing one more incoming pattern."""

    index: int  # 1-based position in the corpus
    O: float  # cumulative raw size of the corpus so far, bits
    G: float
    E: float
    T: float

    @property
    def T_over_O(self) -> float:
        return self.T / self.O if self.O else 1.0


@dataclass
class LearnParams:
    tree_width: int = 16
    branch: int = 4  # alternative alignments expanded per grammar
    align_params: AlignParams = field(
        default_factory=lambda: LEARN_ALIGN_PARAMS
    )
    cost_model: CostModel = CostModel.FRACTIONAL


class IdAllocator:
    """Fresh class names (A, B, ... Z, then P1, P2, ...) and per-class
    discriminator tokens, avoiding every name already in use."""

    def __init__(self, reserved=()) -> None:
        self._reserved = set(reserved)
        self._class_index = 0
        self._discriminators: dict[str, int] = {}

    def reserve(self, names) -> None:
        self._reserved.update(names)

    def fresh_class(self) -> str:
        while True:
            i = self._class_index
            self._class_index += 1
            name = chr(ord("A") + i) if i < 26 else f"P{i - 25}"
            if name not in self._reserved and "#" + name not in self._reserved:
                self._reserved.add(name)
                self._reserved.add("#" + name)
                return name

    def next_discriminator(self, cls: str) -> str:
        n = self._discriminators.get(cls, 0) + 1
        self._discriminators[cls] = n
        token = str(n)
        while token in self._reserved and not token.isdigit():
            token = f"{cls}{n}"
        return token


def raw_size(tokens) -> float:
    """Bits to store a token sequence as literal, uncoded text."""
    return sum(RAW_BITS_PER_CHAR * len(t) for t in tokens)


def copy_pattern(tokens, namer: IdAllocator) -> tuple[GrammarPattern, list[str]]:
    """A whole-pattern copy with fresh ids: class, contents, closer."""
    cls = namer.fresh_class()
    pat = GrammarPattern((cls, *tokens, "#" + cls), 1)
    return pat, [cls, "#" + cls]


def grammar_store(g: Grammar, news=None) -> PatternStore:
    """Materialize a candidate grammar (and optional incoming patterns) as a
    pattern store ready for alignment building."""
    store = PatternStore()
    lines = []
    if g.id_names:
        lines.append("%id " + " ".join(sorted(g.id_names)))
    for p in g.patterns:
        line = " ".join(p.symbols)
        if p.frequency != 1:
            line += f" ({p.frequency})"
        lines.append(line)
    store.add_text("\n".join(lines) + "\n", Role.OLD)
    if news:
        for toks in news:
            store.add_text(" ".join(toks), Role.NEW)
    return store


def _grammar_bits(g: Grammar, table: CodeTable, store: PatternStore) -> float:
    """G: each pattern once, contents symbols at table rate, service
    symbols at their aggregate rate."""
    total = sum(len(p.symbols) for p in g.patterns)
    service = sum(1 for p in g.patterns for s in p.symbols if s in g.id_names)
    id_rate = math.log2(total / service) if 0 < service < total else 0.0
    bits = 0.0
    for p in g.patterns:
        for s in p.symbols:
            if s in g.id_names:
                bits += id_rate
            else:
                bits += table.size(store.table.intern(s))
    return bits


def _encoding_bits(
    sa: ScoredAlignment | None,
    toks,
    store: PatternStore,
    id_names: frozenset[str],
    id_rate: float,
    table: CodeTable,
) -> float:
    """e_i for one corpus pattern; never worse than storing the raw text.

    Code symbols cost their aggregate service rate (id symbols) or table
    rate (contents).  Unencoded corpus symbols cost literal text, and so do
    stored contents symbols the alignment asserts but the corpus does not
    contain: the code must cancel whatever it would wrongly regenerate."""
    raw = raw_size(toks)
    if sa is None:
        return raw
    name = store.table.name
    bits = sum(
        id_rate if name(s) in id_names else table.size(s) for s in sa.code
    )
    matched = matched_new_positions(sa.alignment)
    bits += sum(
        RAW_BITS_PER_CHAR * len(t)
        for i, t in enumerate(toks)
        if i not in matched
    )
    aln = sa.alignment
    for ci, cells in enumerate(aln.columns()):
        if len(cells) == 1 and cells[0][0] != aln.new_row_index:
            token = name(aln.col_syms[ci])
            if token not in id_names:
                bits += RAW_BITS_PER_CHAR * len(token)
    return min(raw, bits)


def grammar_costs(
    g: Grammar,
    news: list[list[str]],
    params: LearnParams | None = None,
    _cache: dict | None = None,
) -> Grammar:
    """Score a candidate grammar over a corpus: G per the grammar-bits
    convention, E as the sum of per-pattern encoding costs, T = G + E."""
    if params is None:
        params = LearnParams()
    if not g.patterns:
        return Grammar(g.patterns, g.id_names, 0.0, sum(raw_size(t) for t in news))
    key = g.key()
    store = grammar_store(g, news)
    table = compute_code_sizes(store, params.cost_model)
    G = _grammar_bits(g, table, store)
    total = sum(len(p.symbols) for p in g.patterns)
    service = sum(1 for p in g.patterns for s in p.symbols if s in g.id_names)
    id_rate = math.log2(total / service) if 0 < service < total else 0.0
    E = 0.0
    for toks, new_pat in zip(news, store.new_patterns):
        ckey = (key, tuple(toks))
        if _cache is not None and ckey in _cache:
            E += _cache[ckey]
            continue
        res = build_alignments(new_pat, store, table, params.align_params)
        e = _encoding_bits(
            res[0] if res else None, toks, store, g.id_names, id_rate, table
        )
        if _cache is not None:
            _cache[ckey] = e
        E += e
    return Grammar(g.patterns, g.id_names, G, E)


def _column_roles(aln: MultipleAlignment, id_names, names):
    """Per column, in arrangement order: ('match'|'new'|'old'|'id', token)."""
    out = []
    for ci, cells in enumerate(aln.columns()):
        token = names(aln.col_syms[ci:ci + 1])[0]
        rows = {r for r, _ in cells}
        has_new = aln.new_row_index in rows
        has_old = any(r != aln.new_row_index for r in rows)
        if has_new and has_old:
            out.append(("match", token))
        elif has_new:
            out.append(("new", token))
        elif token in id_names:
            out.append(("id", token))
        else:
            out.append(("old", token))
    return out


def derive_patterns_from_alignment(
    sa: ScoredAlignment,
    store: PatternStore,
    id_names,
    namer: IdAllocator,
) -> tuple[list[GrammarPattern], list[str]]:
    """Split a two-row partial match into chunk, variant and abstract
    patterns.

    Fully-matched runs become chunk patterns; each gap's unmatched material
    (one run from the incoming pattern, one from the stored pattern) becomes
    two variant patterns under a shared fresh class; a final abstract
    pattern strings the classes together in order.  Returns the derived
    patterns and the fresh id names they introduce.
    """
    aln = sa.alignment
    if len(aln.rows) != 2:
        raise ValueError("derivation needs exactly two rows")
    roles = _column_roles(aln, set(id_names), store.table.names)
    # Segment into alternating matched runs and gaps.
    segments = []  # ("chunk", tokens) | ("gap", new_tokens, old_tokens)
    for kind, token in roles:
        if kind == "id":
            continue
        if kind == "match":
            if segments and segments[-1][0] == "chunk":
                segments[-1][1].append(token)
            else:
                segments.append(("chunk", [token]))
        else:
            if not segments or segments[-1][0] != "gap":
                segments.append(("gap", [], []))
            if kind == "new":
                segments[-1][1].append(token)
            else:
                segments[-1][2].append(token)
    derived: list[GrammarPattern] = []
    fresh: list[str] = []
    frame: list[str] = []
    for seg in segments:
        cls = namer.fresh_class()
        fresh.extend([cls, "#" + cls])
        if seg[0] == "chunk":
            derived.append(GrammarPattern((cls, *seg[1], "#" + cls), 2))
        else:
            for variant in (seg[2], seg[1]):  # stored material first
                if not variant:
                    continue
                disc = namer.next_discriminator(cls)
                fresh.append(disc)
                derived.append(GrammarPattern((cls, disc, *variant, "#" + cls), 1))
        frame.extend([cls, "#" + cls])
    abstract_cls = namer.fresh_class()
    fresh.extend([abstract_cls, "#" + abstract_cls])
    derived.append(
        GrammarPattern((abstract_cls, *frame, "#" + abstract_cls), 2)
    )
    return derived, fresh


def _slot_spans(symbols: tuple[str, ...], id_names) -> list[tuple[str, int, int]]:
    """Interior (class, open position, close position) bracket pairs."""
    spans = []
    stack: list[tuple[str, int]] = []
    for i, s in enumerate(symbols):
        if s not in id_names:
            continue
        if s.startswith("#"):
            if stack and stack[-1][0] == s[1:]:
                cls, start = stack.pop()
                spans.append((cls, start, i))
        else:
            stack.append((s, i))
    # The outermost pair is the pattern's own bracket, not a slot.
    return [
        (cls, a, b)
        for cls, a, b in spans
        if not (a == 0 and b == len(symbols) - 1)
    ]


def extend_class_from_alignment(
    sa: ScoredAlignment,
    store: PatternStore,
    id_names,
    namer: IdAllocator,
) -> tuple[list[GrammarPattern], list[str]] | None:
    """Fill unfilled slots of a partially-recognised incoming pattern.

    When the best alignment parses part of the incoming pattern with an
    abstract pattern but leaves a run of symbols inside an empty slot
    (both slot brackets unmatched), that run becomes a new variant of the
    slot's class.  Returns None when no unmatched run sits in a slot.
    """
    aln = sa.alignment
    id_set = set(id_names)
    names = store.table.names
    # Unmatched runs of the incoming row, as column-index spans.
    matched = matched_new_positions(aln)
    new_row = aln.rows[aln.new_row_index]
    runs: list[list[int]] = []
    for pos, col in enumerate(new_row.cols):
        if pos in matched:
            continue
        if runs and runs[-1][-1] == _prev_new_col(new_row, pos):
            runs[-1].append(col)
        else:
            runs.append([col])
    if not runs:
        return None
    # A run can live in a slot when the column partial order does not
    # force it outside: no run column may precede the opener or follow
    # the closer.  (Unordered is fine — free columns interleave
    # arbitrarily in the stored arrangement.)
    masks = column_order_masks(aln)
    columns = aln.columns()
    derived: list[GrammarPattern] = []
    fresh: list[str] = []
    claimed: set[int] = set()
    for ri, row in enumerate(aln.rows):
        if ri == aln.new_row_index:
            continue
        syms = tuple(names(row.pattern.symbols))
        for cls, a, b in _slot_spans(syms, id_set):
            col_a, col_b = row.cols[a], row.cols[b]
            open_solo = len(columns[col_a]) == 1
            close_solo = len(columns[col_b]) == 1
            if not (open_solo and close_solo):
                continue  # slot already filled by another row
            for rn, run in enumerate(runs):
                if rn in claimed:
                    continue
                admissible = all(
                    not (masks[col_a] >> c) & 1
                    and not (masks[c] >> col_b) & 1
                    for c in run
                )
                if admissible:
                    tokens = [names([aln.col_syms[c]])[0] for c in run]
                    disc = namer.next_discriminator(cls)
                    fresh.append(disc)
                    derived.append(
                        GrammarPattern((cls, disc, *tokens, "#" + cls), 1)
                    )
                    claimed.add(rn)
    if len(claimed) != len(runs):
        return None  # some unmatched material has no slot to live in
    return derived, fresh


def _prev_new_col(new_row, pos: int) -> int:
    return new_row.cols[pos - 1] if pos > 0 else -1


def _expansions(
    g: Grammar, toks: list[str], params: LearnParams, namer: IdAllocator
) -> list[Grammar]:
    """Candidate successor grammars after absorbing one incoming pattern."""
    options: list[Grammar] = []
    copy, copy_ids = copy_pattern(toks, namer)
    options.append(
        Grammar(g.patterns + (copy,), g.id_names | frozenset(copy_ids))
    )
    if not g.patterns:
        return options
    store = grammar_store(g, [toks])
    table = compute_code_sizes(store, params.cost_model)
    (new_pat,) = store.new_patterns
    results = build_alignments(new_pat, store, table, params.align_params)
    npos = frozenset(range(len(toks)))
    names = store.table.names
    pattern_of = {
        id(sp): gp
        for sp, gp in zip(store.old_patterns, g.patterns)
    }
    seen_branches = set()
    branched = 0
    for sa in results:
        if branched >= params.branch:
            break
        rowset = tuple(
            sorted(
                id(r.pattern)
                for ri, r in enumerate(sa.alignment.rows)
                if ri != sa.alignment.new_row_index
            )
        )
        # Same rows with a different match layout derive different
        # patterns, so the branch key includes the matched positions.
        branch_key = (rowset, matched_new_positions(sa.alignment))
        if branch_key in seen_branches:
            continue
        seen_branches.add(branch_key)
        used = [
            pattern_of[pid] for pid in rowset if pid in pattern_of
        ]
        if matched_new_positions(sa.alignment) == npos:
            # Recognition: the grammar already explains the pattern.
            bump = {id(gp) for gp in used}
            options.append(
                Grammar(
                    tuple(
                        GrammarPattern(p.symbols, p.frequency + 1)
                        if id(p) in bump
                        else p
                        for p in g.patterns
                    ),
                    g.id_names,
                )
            )
            branched += 1
            continue
        if len(sa.alignment.rows) == 2:
            derived, fresh = derive_patterns_from_alignment(
                sa, store, g.id_names, namer
            )
            ids = g.id_names | frozenset(fresh)
            source = used[0] if used else None
            options.append(Grammar(g.patterns + tuple(derived), ids))
            if source is not None:
                rest = tuple(p for p in g.patterns if p is not source)
                options.append(Grammar(rest + tuple(derived), ids))
            branched += 1
            continue
        extension = extend_class_from_alignment(sa, store, g.id_names, namer)
        if extension is not None:
            derived, fresh = extension
            options.append(
                Grammar(
                    g.patterns + tuple(derived),
                    g.id_names | frozenset(fresh),
                )
            )
            branched += 1
    return options


def refresh_frequencies(
    g: Grammar, news: list[list[str]], params: LearnParams
) -> Grammar:
    """Recount pattern frequencies as actual usage by each incoming
    pattern's best parse, dropping patterns no parse uses."""
    if not g.patterns:
        return g
    store = grammar_store(g, news)
    table = compute_code_sizes(store, params.cost_model)
    counts = {id(gp): 0 for gp in g.patterns}
    pattern_of = dict(zip((id(sp) for sp in store.old_patterns), g.patterns))
    for new_pat in store.new_patterns:
        res = build_alignments(new_pat, store, table, params.align_params)
        if not res:
            continue
        aln = res[0].alignment
        for ri, row in enumerate(aln.rows):
            if ri == aln.new_row_index:
                continue
            gp = pattern_of.get(id(row.pattern))
            if gp is not None:
                counts[id(gp)] += 1
    kept = tuple(
        GrammarPattern(p.symbols, counts[id(p)])
        for p in g.patterns
        if counts[id(p)] > 0
    )
    if not kept:
        return g
    used_names = {s for p in kept for s in p.symbols}
    return Grammar(kept, frozenset(n for n in g.id_names if n in used_names))


def search_grammars(
    news: list[list[str]], params: LearnParams | None = None
) -> tuple[list[Grammar], list[MetricsRecord]]:
    """Grow and prune the tree of candidate grammars over a corpus.

    Processes incoming patterns in order, branching on alternative
    alignments, scoring every candidate by T over the corpus seen so far
    and pruning to tree_width (the minimum-T candidate always survives).
    Returns the final candidates, best first, and one metrics record per
    corpus pattern.
    """
    if not news:
        raise ValueError("empty corpus")
    if params is None:
        params = LearnParams()
    reserved = {t for toks in news for t in toks}
    namer = IdAllocator(reserved)
    cache: dict = {}
    tree: list[Grammar] = [Grammar((), frozenset())]
    metrics: list[MetricsRecord] = []
    O = 0.0
    for i, toks in enumerate(news):
        O += raw_size(toks)
        seen: dict[tuple, Grammar] = {}
        for g in tree:
            for option in _expansions(g, toks, params, namer):
                seen.setdefault(option.key(), option)
        scored = [
            grammar_costs(option, news[: i + 1], params, cache)
            for option in seen.values()
        ]
        scored.sort(key=lambda g: (g.T, g.key()))
        tree = scored[: params.tree_width]
        best = tree[0]
        metrics.append(MetricsRecord(i + 1, O, best.G, best.E, best.T))
    # Frequencies become usage counts and unused patterns are dropped, but
    # the ranking stays as the search decided it: the refresh is final
    # bookkeeping, not a re-evaluation.
    final = [
        grammar_costs(refresh_frequencies(g, news, params), news, params, cache)
        for g in tree
    ]
    return final, metrics


def copies_grammar(news: list[list[str]]) -> Grammar:
    """The baseline grammar holding one id-wrapped copy per distinct
    incoming pattern."""
    namer = IdAllocator({t for toks in news for t in toks})
    patterns: list[GrammarPattern] = []
    ids: set[str] = set()
    seen = set()
    for toks in news:
        key = tuple(toks)
        if key in seen:
            for i, p in enumerate(patterns):
                if p.symbols[1:-1] == key:
                    patterns[i] = GrammarPattern(p.symbols, p.frequency + 1)
                    break
            continue
        seen.add(key)
        pat, fresh = copy_pattern(toks, namer)
        patterns.append(pat)
        ids.update(fresh)
    return Grammar(tuple(patterns), frozenset(ids))


def null_grammar() -> Grammar:
    return Grammar((), frozenset())
