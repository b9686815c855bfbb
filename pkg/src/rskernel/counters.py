"""Operation counters shared by the decoding routines.

Conventions: `sums` counts field additions and LLR/metric additions,
`cmps` counts weight/threshold comparisons, `muls` counts field
multiplications (inversions included).  Increments are batched, e.g. a
length-n vector addition adds n to `sums` in one call.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class Counters:
    sums: int = 0
    cmps: int = 0
    muls: int = 0
    candidates: int = 0

    def reset(self) -> None:
        self.sums = 0
        self.cmps = 0
        self.muls = 0
        self.candidates = 0

    def snapshot(self) -> "Counters":
        return Counters(self.sums, self.cmps, self.muls, self.candidates)

    def add(self, other: "Counters") -> None:
        self.sums += other.sums
        self.cmps += other.cmps
        self.muls += other.muls
        self.candidates += other.candidates

    @property
    def total(self) -> int:
        return self.sums + self.cmps + self.muls
