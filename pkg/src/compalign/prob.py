"""Probabilities of alignments and of the inferences they license.

An alignment's code is one point in the set of sequences of the same cost,
so its absolute probability is 2^-L for a code of L bits.  Competing
alignments that encode the same part of the observed pattern form a
reference set, within which relative probabilities normalize to one; the
probability of an inferred pattern or symbol type is the summed relative
probability of the reference-set members that contain it.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .align import ScoredAlignment, matched_new_positions
from .codetable import CodeTable
from .patterns import Pattern, PatternStore


class ProbabilityMode(Enum):
    STRICT = "strict"  # compare alignments that encode the same New symbols
    LGEN = "lgen"  # charge unmatched New symbols, compare across coverage


@dataclass(frozen=True)
class AbsoluteProb:
    L: float  # code cost, bits
    Nnot: float  # cost of the New symbols the alignment leaves unencoded
    Lgen: float  # L + Nnot
    p_ABS: float


@dataclass(frozen=True)
class ReferenceSet:
    members: tuple[ScoredAlignment, ...]
    p_rel: tuple[float, ...]
    reference_positions: frozenset[int]  # New positions encoded by the top member
    p_A_SUM: float

    @property
    def R(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class EntityProbs:
    pattern_probs: dict[Pattern, float]
    symbol_probs: dict[int, float]


def absolute_probability(
    sa: ScoredAlignment,
    new: Pattern,
    table: CodeTable,
    mode: ProbabilityMode = ProbabilityMode.STRICT,
) -> AbsoluteProb:
    """Probability of the alignment's encoding as one point in the space of
    codes of equal cost: 2^-L, with L generalized to include unencoded New
    symbols under LGEN so that alignments of different coverage compare."""
    L = sa.B_E
    matched = matched_new_positions(sa.alignment)
    nnot = sum(
        table.size(sym) for p, sym in enumerate(new.symbols) if p not in matched
    )
    lgen = L + nnot
    exponent = lgen if mode is ProbabilityMode.LGEN else L
    return AbsoluteProb(L, nnot, lgen, 2.0 ** -exponent)


def relative_probabilities(
    alignments: list[ScoredAlignment],
    new: Pattern,
    table: CodeTable,
    mode: ProbabilityMode = ProbabilityMode.STRICT,
    min_p_rel: float = 0.02,
) -> ReferenceSet:
    """Normalize absolute probabilities over the reference set.

    Under STRICT mode the set holds the alignments that encode exactly the
    New symbols the best alignment encodes, neither more nor less; under
    LGEN every alignment is comparable and all are kept.  Members whose
    relative probability falls below ``min_p_rel`` are dropped and the
    rest renormalized, so tiny also-rans do not clutter inference reports.
    """
    if not alignments:
        raise ValueError("no alignments")
    reference = matched_new_positions(alignments[0].alignment)
    if mode is ProbabilityMode.STRICT:
        members = [
            sa
            for sa in alignments
            if matched_new_positions(sa.alignment) == reference
        ]
    else:
        members = list(alignments)
    absolute = [absolute_probability(sa, new, table, mode).p_ABS for sa in members]
    total = sum(absolute)
    rel = [p / total for p in absolute]
    if min_p_rel > 0.0:
        kept = [(sa, r) for sa, r in zip(members, rel) if r >= min_p_rel]
        if kept:
            members = [sa for sa, _ in kept]
            scale = sum(r for _, r in kept)
            rel = [r / scale for _, r in kept]
    return ReferenceSet(tuple(members), tuple(rel), reference, total)


def explanatory_alignments(
    alignments: list[ScoredAlignment],
    new: Pattern,
    store: PatternStore,
) -> list[ScoredAlignment]:
    """Filter candidates down to complete, maximal explanations of New.

    Three steps, applied to alignments ranked best-first:

    1.  Keep only alignments that encode every symbol of New.
    2.  Keep one alignment per distinct code.  The absolute probability is a
        function of the code alone, so alignments that produce the same
        encoding are the same event and must not be counted twice.
    3.  Keep only the alignments that leave the fewest stored contents
        symbols unaccounted for.  An alignment that matches New equally
        well but abandons more of the material its own rows assert is an
        incomplete reading of the same evidence, not a genuine
        alternative.
    """
    is_id = store.is_id()
    npos = frozenset(range(len(new.symbols)))
    full = [
        sa for sa in alignments if matched_new_positions(sa.alignment) == npos
    ]
    by_code: dict[tuple[int, ...], ScoredAlignment] = {}
    for sa in full:
        by_code.setdefault(tuple(sa.code), sa)
    members = list(by_code.values())
    if not members:
        return []

    def dangling(sa: ScoredAlignment) -> int:
        aln = sa.alignment
        return sum(
            1
            for ci, cells in enumerate(aln.columns())
            if len(cells) == 1
            and cells[0][0] != aln.new_row_index
            and not is_id[aln.col_syms[ci]]
        )

    counts = [dangling(sa) for sa in members]
    least = min(counts)
    return [sa for sa, n in zip(members, counts) if n == least]


def entity_probabilities(ref: ReferenceSet) -> EntityProbs:
    """Probabilities of the Old patterns and symbol types the reference set
    brings in.  A pattern's probability sums the relative probabilities of
    the member alignments containing it; a type sums its patterns' values,
    capped at one.  Types observed in the New pattern are certainties."""
    pattern_probs: dict[Pattern, float] = {}
    for sa, p in zip(ref.members, ref.p_rel):
        aln = sa.alignment
        present = {
            row.pattern
            for ri, row in enumerate(aln.rows)
            if ri != aln.new_row_index
        }
        for pat in present:
            pattern_probs[pat] = pattern_probs.get(pat, 0.0) + p
    symbol_probs: dict[int, float] = {}
    for pat, p in pattern_probs.items():
        for sym in set(pat.symbols):
            symbol_probs[sym] = symbol_probs.get(sym, 0.0) + p
    for sym in symbol_probs:
        symbol_probs[sym] = min(1.0, symbol_probs[sym])
    observed = ref.members[0].alignment.new_pattern
    for sym in observed.symbols:
        symbol_probs[sym] = 1.0
    return EntityProbs(pattern_probs, symbol_probs)
