# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hit-search kernel, a twin of ``_hitkern``.

Same algorithm and same results as the pure-Python module: broadcast every
query symbol to every matching database position, grow the hit structure,
purge the worst half of the leaves when the node budget is exceeded.  Node
scalars live in a C array; only the partial-order masks (arbitrary-width
bitmasks) stay as Python integers.
"""

from libc.stdlib cimport free, malloc, realloc


cdef struct Node:
    int q
    int d
    int parent
    int nhits
    int q0
    int d0
    int nchild
    double wsum


def search_hits(query, db, weights, node_budget, gap_penalty, db_before=None):
    """Return a list of (score, gaps, hits) for every hit sequence found."""
    cdef Py_ssize_t n_nodes, cap, ni, snapshot
    cdef int qi, di, n_created
    cdef double w, gaps, penalty = gap_penalty
    cdef Py_ssize_t budget = node_budget
    cdef bint ordered = db_before is None
    cdef Node* nodes
    cdef Node* node
    cdef Node* child

    positions = {}
    for di, sym in enumerate(db):
        positions.setdefault(sym, []).append(di)

    cap = 4096
    nodes = <Node*> malloc(cap * sizeof(Node))
    if nodes == NULL:
        raise MemoryError()
    nodes[0].q = -1
    nodes[0].d = -1
    nodes[0].parent = -1
    nodes[0].nhits = 0
    nodes[0].q0 = 0
    nodes[0].d0 = 0
    nodes[0].nchild = 0
    nodes[0].wsum = 0.0
    n_nodes = 1
    forbs = [0]  # Python-int masks, parallel to nodes; unused when ordered

    try:
        for qi, sym in enumerate(query):
            dpos = positions.get(sym)
            if not dpos:
                continue
            w = weights[sym]
            for di in dpos:
                bit = 1 << di
                before = 0 if ordered else db_before[di]
                snapshot = n_nodes
                for ni in range(snapshot):
                    node = &nodes[ni]
                    if node.q >= qi:
                        continue
                    if ordered:
                        if node.d >= di:
                            continue
                    else:
                        forb = forbs[ni]
                        if forb & bit:
                            continue
                    if n_nodes == cap:
                        cap *= 2
                        nodes = <Node*> realloc(nodes, cap * sizeof(Node))
                        if nodes == NULL:
                            raise MemoryError()
                        node = &nodes[ni]
                    child = &nodes[n_nodes]
                    child.q = qi
                    child.d = di
                    child.parent = <int> ni
                    child.wsum = node.wsum + w
                    child.nhits = node.nhits + 1
                    if node.nhits:
                        child.q0 = node.q0
                        child.d0 = node.d0
                    else:
                        child.q0 = qi
                        child.d0 = di
                    child.nchild = 0
                    node.nchild += 1
                    if not ordered:
                        forbs.append(forb | before | bit)
                    n_nodes += 1
                if ordered:
                    # keep the mask list length in sync for purge compaction
                    if len(forbs) < n_nodes:
                        forbs.extend([0] * (n_nodes - len(forbs)))
                if n_nodes > budget:
                    n_nodes = _purge(nodes, n_nodes, penalty, forbs)

        out = []
        for ni in range(1, n_nodes):
            node = &nodes[ni]
            if node.q < 0:
                continue
            gaps = 0.5 * (abs(node.q - node.q0) + abs(node.d - node.d0)) \
                + 1.0 - node.nhits
            score = node.wsum - penalty * gaps
            hits = []
            cur = ni
            while nodes[cur].nhits:
                hits.append((nodes[cur].q, nodes[cur].d))
                cur = nodes[cur].parent
            hits.reverse()
            out.append((score, gaps, tuple(hits)))
        return out
    finally:
        free(nodes)


cdef Py_ssize_t _purge(Node* nodes, Py_ssize_t n_nodes, double penalty, list forbs):
    """Drop the worst half of the leaves plus their unshared ancestors,
    compacting the array in place.  Returns the new node count."""
    cdef Py_ssize_t ni, cur, parent, kept
    cdef double gaps
    leaves = []
    for ni in range(1, n_nodes):
        if nodes[ni].nchild == 0 and nodes[ni].q >= 0:
            gaps = 0.5 * (abs(nodes[ni].q - nodes[ni].q0)
                          + abs(nodes[ni].d - nodes[ni].d0)) \
                + 1.0 - nodes[ni].nhits
            leaves.append((nodes[ni].wsum, -gaps, ni))
    leaves.sort()
    for _, _, doomed in leaves[: len(leaves) // 2]:
        cur = doomed
        while cur > 0:
            nodes[cur].q = -2  # tombstone
            parent = nodes[cur].parent
            nodes[parent].nchild -= 1
            if nodes[parent].nchild > 0 or parent == 0:
                break
            cur = parent
    remap = <int*> malloc(n_nodes * sizeof(int))
    if remap == NULL:
        raise MemoryError()
    try:
        kept = 0
        for ni in range(n_nodes):
            if ni == 0 or nodes[ni].q != -2:
                remap[ni] = <int> kept
                if kept != ni:
                    nodes[kept] = nodes[ni]
                    forbs[kept] = forbs[ni]
                kept += 1
            else:
                remap[ni] = -1
        del forbs[kept:]
        for ni in range(1, kept):
            nodes[ni].parent = remap[nodes[ni].parent]
        return kept
    finally:
        free(remap)
