"""Per-symbol-type bit costs.

Type frequencies are tallied over the old patterns only: each occurrence of
a type in an old pattern contributes that pattern's frequency.  Types seen
only in new patterns get an add-one floor so a code exists for every symbol
the encoder may emit.  Costs follow Shannon-Fano-Elias coding: short codes
for frequent types.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .patterns import PatternStore


class CostModel(Enum):
    FRACTIONAL = "fractional"
    SFE_INTEGER = "sfe"


@dataclass(frozen=True)
class CodeTable:
    sizes: tuple[float, ...]  # bits, indexed by symbol-type id
    frequencies: tuple[int, ...]
    cost_model: CostModel

    @property
    def total_types(self) -> int:
        return len(self.sizes)

    def size(self, sid: int) -> float:
        return self.sizes[sid]

    def pattern_bits(self, symbols) -> float:
        sizes = self.sizes
        return sum(sizes[s] for s in symbols)


def compute_code_sizes(store: PatternStore, cost_model: CostModel = CostModel.FRACTIONAL) -> CodeTable:
    if not store.old_patterns:
        raise ValueError("no Old patterns")
    n = len(store.table)
    freq = [0] * n
    for pat in store.old_patterns:
        for sid in pat.symbols:
            freq[sid] += pat.frequency
    for sid in range(n):
        if freq[sid] == 0:
            freq[sid] = 1
    total = sum(freq)
    sizes = []
    for sid in range(n):
        p = freq[sid] / total
        bits = -math.log2(p)
        if cost_model is CostModel.SFE_INTEGER:
            bits = math.ceil(bits) + 1
        sizes.append(float(bits))
    return CodeTable(tuple(sizes), tuple(freq), cost_model)
