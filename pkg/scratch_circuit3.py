import pathlib, sys
sys.path.insert(0, "src")
import compalign.align as A
from compalign.codetable import compute_code_sizes
from compalign.match import find_hit_sequences
from compalign.patterns import PatternStore, Role

store = PatternStore()
store.add_text(pathlib.Path("tests/fixtures/circuit.grammar").read_text(), Role.OLD)
(new,) = store.add_text("TM1I1 TM1I2 TM2I1 TM2I2 TM3I1 TM3I2 FM4O TM5O", Role.NEW)
table = compute_code_sizes(store)
name = store.table.name
is_id = store.is_id()
kinds = {id(p): A._occurrence_kinds(p, is_id, name) for p in store.old_patterns}
partners = {id(p): A._partner_positions(p, is_id, name) for p in store.old_patterns}

def merge_ok(aln, columns, pat, hits):
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
            pq = pat_partners.get(p)
            rq = partners[id(row.pattern)].get(pos)
            if pq is not None and rq is not None:
                if hitmap.get(pq) != row.cols[rq]:
                    return False, f"pair completion fail at col {c} pos {p} ({name(pat.symbols[p])})"
        cells.append((pat_kinds[p], pat_br))
        if not A._column_cells_valid(cells):
            return False, f"column invalid at col {c} ({name(aln.col_syms[c])}) cells={cells}"
    return True, ""

def find(first_words):
    for p in store.old_patterns:
        if [name(s) for s in p.symbols[:len(first_words)]] == first_words:
            return p
    raise KeyError(first_words)

seq = [find(["M1", "M1BAD", "TM1I1", "TM1I2", "FM1O"]), find(["M2", "M2GOOD"]),
       find(["M3", "M3GOOD"]), find(["M4", "M4GOOD", "TM4I1", "FM4I2"]),
       find(["M5", "M5GOOD", "TM5I1", "TM5I2", "TM5O"]), find(["frame"])]
weights = table.sizes
aln = A.seed_alignment(new)
for p in seq:
    masks = A.column_order_masks(aln)
    hss = find_hit_sequences(p.symbols, aln.col_syms, weights, db_before=masks, gap_penalty=0.1)
    print(name(p.symbols[0]), name(p.symbols[1]) if len(p.symbols) > 1 else "", "- hit seqs:", len(hss))
    merged = None
    for hs in hss[:6]:
        hits = tuple((c, q) for q, c in hs.hits)
        ok, why = merge_ok(aln, aln.columns(), p, hits)
        desc = [(name(p.symbols[q]), c) for c, q in hits]
        print("   hs:", desc, "ok:", ok, why)
        if ok and merged is None:
            try:
                cand = A.merge_row(aln, p, hits)
            except ValueError as e:
                print("   merge_row error:", e)
                continue
            if not A._coreference_complete(cand, kinds):
                print("   coreference incomplete")
                continue
            merged = cand
    if merged is None:
        print("   !! could not attach")
        break
    aln = merged
sa = A.compression_scores(A.canonical_arrangement(aln), table, is_id)
print("final CD", sa.CD, "B_E", sa.B_E, "code:", " ".join(name(s) for s in sa.code))
