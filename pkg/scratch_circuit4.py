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

def find(first_words):
    for p in store.old_patterns:
        if [name(s) for s in p.symbols[:len(first_words)]] == first_words:
            return p
    raise KeyError(first_words)

seq = [find(["M1", "M1BAD", "TM1I1", "TM1I2", "FM1O"]), find(["M2", "M2GOOD"]),
       find(["M3", "M3GOOD"]), find(["M4", "M4GOOD", "TM4I1", "FM4I2"]),
       find(["M5", "M5GOOD", "TM5I1", "TM5I2", "TM5O"])]
frame = find(["frame"])
weights = table.sizes
aln = A.seed_alignment(new)
for p in seq:
    masks = A.column_order_masks(aln)
    hss = find_hit_sequences(p.symbols, aln.col_syms, weights, db_before=masks, gap_penalty=0.1)
    hits = tuple((c, q) for q, c in hss[0].hits)
    aln = A.merge_row(aln, p, hits)
for budget in (10_000, 50_000, 200_000, 1_000_000):
    masks = A.column_order_masks(aln)
    hss = find_hit_sequences(frame.symbols, aln.col_syms, weights, node_budget=budget, db_before=masks, gap_penalty=0.1)
    best = hss[0]
    print(f"budget={budget}: {len(hss)} seqs, best has {len(best.hits)} hits: {[name(frame.symbols[q]) for q, c in best.hits]}")
