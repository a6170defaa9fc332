import pathlib
import sys

sys.path.insert(0, "src")
from compalign.align import AlignParams, build_alignments
from compalign.codetable import compute_code_sizes
from compalign.patterns import PatternStore, Role
from compalign.prob import entity_probabilities, relative_probabilities

store = PatternStore()
store.add_text(pathlib.Path("tests/fixtures/alarm.grammar").read_text(), Role.OLD)
new_text = sys.argv[1] if len(sys.argv) > 1 else "phone_alarm_call"
(new,) = store.add_text(new_text, Role.NEW)
table = compute_code_sizes(store)
res = build_alignments(new, store, table, AlignParams())
print(f"{len(res)} alignments")
for sa in res[:8]:
    rows = [" ".join(store.table.name(s) for s in r.pattern.symbols) for r in sa.alignment.rows]
    code = " ".join(store.table.name(s) for s in sa.code)
    print(f"CD={sa.CD:.3f} B_N={sa.B_N:.3f} B_E={sa.B_E:.3f} code=[{code}] rows={rows[1:]}")
ref = relative_probabilities(res, new, table)
print("reference set size", ref.R)
for sa, p in zip(ref.members, ref.p_rel):
    code = " ".join(store.table.name(s) for s in sa.code)
    print(f"  p_REL={p:.4f} CD={sa.CD:.3f} code=[{code}]")
ep = entity_probabilities(ref)
for sym, p in sorted(ep.symbol_probs.items(), key=lambda kv: -kv[1]):
    print(f"  sym {store.table.name(sym)}: {p:.4f}")

print("== column dump of reference members ==")
for sa in ref.members:
    aln = sa.alignment
    print("rows:", [" ".join(store.table.name(s) for s in r.pattern.symbols) for r in aln.rows])
    for ci, cells in enumerate(aln.columns()):
        print("  col", ci, store.table.name(aln.col_syms[ci]), cells)
