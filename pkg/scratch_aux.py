import pathlib
import sys
import time

sys.path.insert(0, "src")
from compalign.align import AlignParams, build_alignments
from compalign.codetable import compute_code_sizes
from compalign.patterns import PatternStore, Role

fixture = sys.argv[1]
new_text = sys.argv[2]

store = PatternStore()
store.add_text(pathlib.Path(f"tests/fixtures/{fixture}.grammar").read_text(), Role.OLD)
(new,) = store.add_text(new_text, Role.NEW)
table = compute_code_sizes(store)
t0 = time.time()
res = build_alignments(new, store, table, AlignParams())
print(f"{len(res)} alignments in {time.time()-t0:.1f}s")
for sa in res[:6]:
    rows = [" ".join(store.table.name(s) for s in r.pattern.symbols) for r in sa.alignment.rows]
    code = " ".join(store.table.name(s) for s in sa.code)
    print(f"CD={sa.CD:.3f} B_N={sa.B_N:.3f} B_E={sa.B_E:.3f} code=[{code}]")
    for r in rows[1:]:
        print("   row:", r)
if res:
    aln = res[0].alignment
    print("== best alignment columns ==")
    for ci, cells in enumerate(aln.columns()):
        print("  col", ci, store.table.name(aln.col_syms[ci]), cells)
