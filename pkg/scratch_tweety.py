import pathlib, sys
sys.path.insert(0, "src")
from compalign.align import build_alignments
from compalign.codetable import compute_code_sizes
from compalign.patterns import PatternStore, Role
from compalign.prob import entity_probabilities, relative_probabilities

for new_text in ["bird Tweety", "penguin Tweety"]:
    store = PatternStore()
    store.add_text(pathlib.Path("tests/fixtures/tweety.grammar").read_text(), Role.OLD)
    (new,) = store.add_text(new_text, Role.NEW)
    table = compute_code_sizes(store)
    res = build_alignments(new, store, table)
    print(f"== {new_text}: {len(res)} alignments")
    for sa in res[:5]:
        rows = [" ".join(store.table.name(s) for s in r.pattern.symbols)[:50] for r in sa.alignment.rows[1:]]
        code = " ".join(store.table.name(s) for s in sa.code)
        print(f" CD={sa.CD:.3f} B_E={sa.B_E:.3f} code=[{code}] rows={rows}")
    ref = relative_probabilities(res, new, table)
    for sa, p in zip(ref.members, ref.p_rel):
        code = " ".join(store.table.name(s) for s in sa.code)
        print(f"  p_REL={p:.4f} code=[{code}]")
    ep = entity_probabilities(ref)
    for nm in ["canfly", "cannotfly", "ostrich", "penguin"]:
        try:
            sym = store.table.intern(nm)
        except Exception:
            continue
        if sym in ep.symbol_probs:
            print(f"  sym {nm}: {ep.symbol_probs[sym]:.4f}")
