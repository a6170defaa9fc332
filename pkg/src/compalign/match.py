"""Full and good partial matches between two symbol sequences.

Unlike single-result dynamic programming, the broadcast search can deliver
several alternative matches between a pair of sequences, each an
order-preserving (non-crossing) hit sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

try:  # compiled kernel, if built
    from ._hitkern_c import search_hits as _search_hits

    KERNEL = "compiled"
except ImportError:  # pragma: no cover - depends on build environment
    from ._hitkern import search_hits as _search_hits

    KERNEL = "python"

DEFAULT_NODE_BUDGET = 1_000_000
DEFAULT_GAP_PENALTY = 0.1


@dataclass(frozen=True)
class HitSequence:
    """An ordered, non-crossing set of symbol matches, with its score."""

    hits: tuple[tuple[int, int], ...]
    score: float
    gaps: float

    def __len__(self) -> int:
        return len(self.hits)


def find_hit_sequences(
    query: Sequence[int],
    database: Sequence[int],
    weights: Sequence[float],
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    max_sequences: int | None = None,
    gap_penalty: float = DEFAULT_GAP_PENALTY,
    db_before: Sequence[int] | None = None,
) -> list[HitSequence]:
    """All hit sequences between query and database, best first.

    The score of a sequence is the summed bit cost of its matched symbols
    minus ``gap_penalty`` per unit of unmatched span, so identity matches
    order first.  Ties break on fewer gaps, then earliest first hit, then
    the lexicographically smallest hit list.

    ``db_before`` switches the database side from list order to a partial
    order: ``db_before[i]`` is a bitmask of positions that must precede
    position ``i``.  Mutually unordered positions may then be hit in
    whatever order the query imposes.
    """
    if not len(query) or not len(database):
        raise ValueError("query and database must be non-empty")
    raw = _search_hits(
        list(query), list(database), weights, node_budget, gap_penalty, db_before
    )
    raw.sort(key=lambda r: (-r[0], r[1], r[2]))
    if max_sequences is not None:
        raw = raw[:max_sequences]
    return [HitSequence(hits, score, gaps) for score, gaps, hits in raw]
