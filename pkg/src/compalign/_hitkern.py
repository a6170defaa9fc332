"""Pure-Python hit-search kernel.

Broadcast every query symbol to every matching database position and record
the resulting hits in a tree (the hit structure).  Each root-to-node path is
an order-preserving sequence of hits.  When the node budget is exceeded the
structure is purged: the lowest-scoring half of the leaves is removed along
with ancestors not shared with surviving paths.

The database may carry a partial order instead of its list order: entry
``db_before[i]`` is a bitmask of the positions that must precede position
``i``.  A hit sequence is then valid as long as no chosen position is
constrained to precede an earlier choice, which lets callers match against
an alignment whose columns from different rows are mutually unordered.
With ``db_before=None`` the list order applies and positions must strictly
increase, as for a plain sequence.

A compiled twin of this module (``_hitkern_c``) implements the same
search; the wrapper in ``match.py`` picks whichever is available.
"""

from __future__ import annotations

# node record layout
_Q, _D, _PARENT, _WSUM, _NHITS, _Q0, _D0, _NCHILD, _FORB = range(9)


def search_hits(query, db, weights, node_budget, gap_penalty, db_before=None):
    """Return a list of (score, gaps, hits) for every hit sequence found.

    ``query`` and ``db`` are sequences of symbol ids, ``weights`` maps a
    symbol id to its bit cost, ``gap_penalty`` is the per-gap-unit score
    deduction.  Hits are tuples of (query_pos, db_pos).
    """
    positions: dict[int, list[int]] = {}
    for di, sym in enumerate(db):
        positions.setdefault(sym, []).append(di)

    root = [-1, -1, -1, 0.0, 0, 0, 0, 0, 0]
    nodes = [root]
    ordered = db_before is None

    for qi, sym in enumerate(query):
        dpos = positions.get(sym)
        if not dpos:
            continue
        w = weights[sym]
        for di in dpos:
            # snapshot length: children added for this (qi, di) have q == qi
            # and cannot extend each other anyway, but freezing the range
            # keeps iteration cost predictable.
            created = []
            bit = 1 << di
            for ni in range(len(nodes)):
                node = nodes[ni]
                if node[_Q] >= qi:
                    continue
                if ordered:
                    if node[_D] >= di:
                        continue
                    forb = 0
                else:
                    if node[_FORB] & bit:
                        continue
                    forb = node[_FORB] | db_before[di] | bit
                if node[_NHITS]:
                    q0, d0 = node[_Q0], node[_D0]
                else:
                    q0, d0 = qi, di
                child = [qi, di, ni, node[_WSUM] + w, node[_NHITS] + 1, q0, d0, 0, forb]
                node[_NCHILD] += 1
                created.append(child)
            nodes.extend(created)
            if len(nodes) > node_budget:
                nodes = _purge(nodes)

    out = []
    for node in nodes[1:]:
        if node[_Q] < 0:
            continue  # tombstone left by purge compaction
        gaps = 0.5 * (abs(node[_Q] - node[_Q0]) + abs(node[_D] - node[_D0])) + 1.0 - node[_NHITS]
        score = node[_WSUM] - gap_penalty * gaps
        hits = []
        cur = node
        while cur[_NHITS]:
            hits.append((cur[_Q], cur[_D]))
            cur = nodes[cur[_PARENT]]
        hits.reverse()
        out.append((score, gaps, tuple(hits)))
    return out


def _purge(nodes):
    """Drop the worst half of the leaves plus their unshared ancestors."""
    leaves = []
    for ni in range(1, len(nodes)):
        node = nodes[ni]
        if node[_NCHILD] == 0 and node[_Q] >= 0:
            gaps = 0.5 * (abs(node[_Q] - node[_Q0]) + abs(node[_D] - node[_D0])) + 1.0 - node[_NHITS]
            leaves.append((node[_WSUM], -gaps, ni))
    leaves.sort()
    doomed = leaves[: len(leaves) // 2]
    for _, _, ni in doomed:
        cur = ni
        while cur > 0:
            node = nodes[cur]
            node[_Q] = -2  # tombstone
            parent = node[_PARENT]
            pnode = nodes[parent]
            pnode[_NCHILD] -= 1
            if pnode[_NCHILD] > 0 or parent == 0:
                break
            cur = parent
    # compact, remapping parent indices
    remap = [-1] * len(nodes)
    kept = []
    for ni, node in enumerate(nodes):
        if ni == 0 or node[_Q] != -2:
            remap[ni] = len(kept)
            kept.append(node)
    for node in kept[1:]:
        node[_PARENT] = remap[node[_PARENT]]
    return kept
