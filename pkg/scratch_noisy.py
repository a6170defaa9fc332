import pathlib, sys, time
sys.path.insert(0, "src")
from compalign.align import build_alignments
from compalign.codetable import compute_code_sizes
from compalign.patterns import PatternStore, Role

def parse(sentence):
    store = PatternStore()
    store.add_text(pathlib.Path("tests/fixtures/noisy.grammar").read_text(), Role.OLD)
    (new,) = store.add_text(sentence, Role.NEW)
    table = compute_code_sizes(store)
    t0 = time.time()
    res = build_alignments(new, store, table)
    best = res[0]
    rows = sorted(" ".join(store.table.name(s) for s in r.pattern.symbols) for r in best.alignment.rows[1:])
    code = " ".join(store.table.name(s) for s in best.code)
    print(f"{sentence!r}: CD={best.CD:.2f} code=[{code}] {time.time()-t0:.1f}s")
    for r in rows:
        print("   ", r)
    return rows

clean = parse("t w o k i t t e n s p l a y")
noisy = parse("t o k i t t e m s p l a x y")
print("SAME OLD ROWS" if clean == noisy else "DIFFERENT ROWS")
