import pathlib, sys, time
sys.path.insert(0, "src")
from compalign.align import AlignParams, build_alignments, produce_from_code, surface_sequence
from compalign.codetable import compute_code_sizes
from compalign.patterns import PatternStore, Role

grammar = pathlib.Path("tests/fixtures/parsing.grammar").read_text()
sentences = [
    "t h i s b o y l o v e s t h a t g i r l",
    "t h a t g i r l r u n s",
    "t h i s d o g r u n s",
    "t h a t d o g l o v e s t h i s g i r l",
]
for s in sentences:
    store = PatternStore()
    store.add_text(grammar, Role.OLD)
    (new,) = store.add_text(s, Role.NEW)
    table = compute_code_sizes(store)
    t0 = time.time()
    res = build_alignments(new, store, table)
    t1 = time.time()
    best = res[0]
    code = " ".join(store.table.name(x) for x in best.code)
    print(f"{s!r}: CD={best.CD:.3f} code=[{code}] parse {t1-t0:.1f}s")
    store2 = PatternStore()
    store2.add_text(grammar, Role.OLD)
    (cp,) = store2.add_text(code, Role.NEW)
    table2 = compute_code_sizes(store2)
    t0 = time.time()
    out = produce_from_code(cp, store2, table2)
    t1 = time.time()
    surface = " ".join(store2.table.name(x) for x in surface_sequence(out, store2))
    ok = surface == s
    print(f"   produce {t1-t0:.1f}s CD={out.CD:.3f} surface={surface!r} {'OK' if ok else 'MISMATCH'}")
