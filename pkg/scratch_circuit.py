import pathlib, sys, time
sys.path.insert(0, "src")
from compalign.align import AlignParams, build_alignments
from compalign.codetable import compute_code_sizes
from compalign.patterns import PatternStore, Role
from compalign.prob import explanatory_alignments, relative_probabilities

store = PatternStore()
store.add_text(pathlib.Path("tests/fixtures/circuit.grammar").read_text(), Role.OLD)
(new,) = store.add_text("TM1I1 TM1I2 TM2I1 TM2I2 TM3I1 TM3I2 FM4O TM5O", Role.NEW)
table = compute_code_sizes(store)
import os
bd = int(os.environ.get("BD", 40)); bt = int(os.environ.get("BT", 400))
pa = int(os.environ.get("PA", 15)); ms = int(os.environ.get("MS", 80))
params = AlignParams(beam_driving=bd, beam_target=bt, max_alignments=30000, patience=pa, max_stages=ms)
t0 = time.time()
res = build_alignments(new, store, table, params)
expl = explanatory_alignments(res, new, store)
dt = time.time() - t0
name = store.table.name
print(f"bd={bd} bt={bt} pa={pa}: {len(res)} alignments, {len(expl)} explanatory, {dt:.1f}s")
def badset(sa):
    return tuple(sorted({name(r.pattern.symbols[0]) for r in sa.alignment.rows if len(r.pattern.symbols) > 1 and name(r.pattern.symbols[1]).endswith("BAD")}))
ref = relative_probabilities(expl, new, table, min_p_rel=0.0)
diag = {}
for sa, p in zip(ref.members, ref.p_rel):
    diag[badset(sa)] = diag.get(badset(sa), 0.0) + p
for b, p in sorted(diag.items(), key=lambda kv: -kv[1]):
    print(f"  {','.join(b) or '(none)'}: {p:.6g}")
print("-- members --")
for sa in sorted(expl, key=lambda s: s.B_E):
    print(f"  B_E={sa.B_E:.3f} bad=[{','.join(badset(sa))}] code={' '.join(name(s) for s in sa.code)}")
