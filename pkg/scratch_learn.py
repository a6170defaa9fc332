import sys
import time

sys.path.insert(0, "src")
from compalign.learn import (
    LearnParams,
    copies_grammar,
    grammar_costs,
    null_grammar,
    search_grammars,
)

corpus1 = [
    "t h a t b o y r u n s".split(),
    "t h a t g i r l r u n s".split(),
]

t0 = time.time()
final, metrics = search_grammars(corpus1)
print(f"{time.time()-t0:.1f}s")
best = final[0]
print("best grammar T=%.2f G=%.2f E=%.2f" % (best.T, best.G, best.E))
for p in best.patterns:
    print("  ", " ".join(p.symbols), f"({p.frequency})")
params = LearnParams()
copies = grammar_costs(copies_grammar(corpus1), corpus1, params)
null = grammar_costs(null_grammar(), corpus1, params)
print(f"T(learned)={best.T:.2f}  T(copies)={copies.T:.2f}  T(null)={null.T:.2f}")
for m in metrics:
    print(f"  i={m.index} O={m.O:.1f} G={m.G:.1f} E={m.E:.1f} T={m.T:.1f} T/O={m.T_over_O:.3f}")
