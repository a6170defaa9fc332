import pathlib, sys
sys.path.insert(0, "src")
from compalign.align import AlignParams, build_alignments, matched_new_positions
from compalign.codetable import compute_code_sizes
from compalign.patterns import PatternStore, Role
from compalign.prob import explanatory_alignments

store = PatternStore()
store.add_text(pathlib.Path("tests/fixtures/circuit.grammar").read_text(), Role.OLD)
(new,) = store.add_text("TM1I1 TM1I2 TM2I1 TM2I2 TM3I1 TM3I2 FM4O TM5O", Role.NEW)
table = compute_code_sizes(store)
res = build_alignments(new, store, table, AlignParams(max_alignments=5000, patience=12, max_stages=60))
name = store.table.name
expl = explanatory_alignments(res, new, store)
is_id = store.is_id()
def badset(sa):
    return ",".join(sorted({name(r.pattern.symbols[0]) for r in sa.alignment.rows if len(r.pattern.symbols) > 1 and name(r.pattern.symbols[1]).endswith("BAD")}))
def dangling(sa):
    aln = sa.alignment
    return [name(aln.col_syms[ci]) for ci, cells in enumerate(aln.columns())
            if len(cells) == 1 and cells[0][0] != aln.new_row_index and not is_id[aln.col_syms[ci]]]
for sa in sorted(expl, key=lambda s: s.B_E)[:12]:
    print(f"B_E={sa.B_E:.3f} bad=[{badset(sa)}] code={' '.join(name(s) for s in sa.code)} dangling={dangling(sa)}")
# all full-coverage M1-only members
npos = frozenset(range(len(new.symbols)))
full = [sa for sa in res if matched_new_positions(sa.alignment) == npos]
m1 = [sa for sa in full if badset(sa) == "M1"]
print(f"\n{len(m1)} full-coverage M1-only members; distinct codes:")
seen = set()
for sa in sorted(m1, key=lambda s: s.B_E):
    c = " ".join(name(s) for s in sa.code)
    if c in seen: continue
    seen.add(c)
    print(f"  B_E={sa.B_E:.3f} code={c} dangling={dangling(sa)}")
