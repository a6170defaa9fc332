import sys, time
sys.path.insert(0, "src")
from compalign.patterns import PatternStore, Role
from compalign.codetable import compute_code_sizes
from compalign.align import AlignParams, build_alignments

store = PatternStore()
store.add_text(open("tests/fixtures/parsing.grammar").read(), Role.OLD)
new = store.add_text("t h i s b o y l o v e s t h a t g i r l", Role.NEW)[0]
table = compute_code_sizes(store)
t0 = time.time()
res = build_alignments(new, store, table, AlignParams())
print(f"{len(res)} alignments in {time.time()-t0:.2f}s")
for sa in res[:5]:
    print(round(sa.CD, 3), round(sa.B_N, 3), round(sa.B_E, 3),
          len(sa.alignment.rows), " ".join(store.table.names(sa.code)))
best = res[0]
for row in best.alignment.rows:
    print(" ".join(store.table.names(row.pattern.symbols)))
