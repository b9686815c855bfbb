"""Soft-decision decoding of MDS codes by q-ary ordered statistics.

The decoder re-encodes hard decisions on the most reliable information set
(MRIS) and perturbs them with low-weight test patterns.  Reprocessing runs
the pattern weights 1..t in full; a matching stage then pairs reprocessed
perturbations into combined patterns of weight up to 2t, visited in
ascending likelihood-cost order so the budget is spent on the likeliest
error supports.  Because every k-subset of positions is an information set
of an MDS code, the systematic matrix comes from algebraic erasure filling
instead of Gaussian elimination, re-encoding is linear in the perturbation,
and no candidate storage is needed.

Candidate enumeration follows a fixed plan truncated to the budget
C(k,t)(q-1)^t + C(s,t)C(k,t).  Optimality-condition pruning skips the
construction of provably non-improving candidates but never changes which
candidates the plan visits, so pruned and unpruned runs return identical
codewords.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .counters import Counters
from .gf import FieldTable
from .rs import (
    RSCodeSpec,
    SystematicMatrix,
    mris_generator_matrix,
    nested_shrink,
    rs_code,
)

__all__ = [
    "LLRTable",
    "TupleStream",
    "DecoderResult",
    "build_llr_table",
    "order0",
    "decode",
    "optimality_prune",
    "candidate_bound",
    "coset_decode_all",
    "CosetWorkspace",
]


@dataclass
class LLRTable:
    """Per-position symbol penalties, hard decisions and reliability order.

    tables[i][z] is the non-negative cost of symbol z at position i, zero at
    the hard decision.  rel_perm[r] is the position holding reliability rank
    r (rank 0 = most reliable).
    """

    tables: list[list[float]]
    hard: list[int]
    reliability: list[float]
    rel_perm: list[int]

    @property
    def length(self) -> int:
        return len(self.tables)

    @property
    def q(self) -> int:
        return len(self.tables[0])


@dataclass
class DecoderResult:
    codeword: tuple[int, ...]
    ew: float
    proven_ml: bool
    candidates: int
    sums: int
    cmps: int
    muls: int


class TupleStream:
    """All (cost, rank, symbol-difference) triples, ascending by cost.

    The difference from the hard decision is stored instead of the symbol,
    which makes the stream invariant under coset translation of the tables.
    """

    def __init__(self, table: LLRTable):
        entries = []
        q = table.q
        for rank, pos in enumerate(table.rel_perm):
            row = table.tables[pos]
            x = table.hard[pos]
            for z in range(q):
                if z != x:
                    entries.append((row[z], rank, z ^ x))
        entries.sort()
        self.cost = [e[0] for e in entries]
        self.rank = [e[1] for e in entries]
        self.diff = [e[2] for e in entries]

    def __len__(self) -> int:
        return len(self.cost)

    def __getitem__(self, j: int) -> tuple[float, int, int]:
        return self.cost[j], self.rank[j], self.diff[j]


class _NoTuples:
    cost: list[float] = []
    rank: list[int] = []
    diff: list[int] = []

    def __len__(self) -> int:
        return 0


_EMPTY_TUPLES = _NoTuples()


def build_llr_table(raw) -> LLRTable:
    """Normalize raw non-negative metric tables into an LLRTable.

    Hard-decision ties go to the smallest symbol value; reliability ties in
    the sort go to the smaller original position.
    """
    arr = np.asarray(raw, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError("expected a 2-D (length x q) metric table")
    if not np.isfinite(arr).all():
        raise ValueError("metric tables must be finite")
    hard = np.argmin(arr, axis=1)
    norm = arr - arr[np.arange(arr.shape[0]), hard][:, None]
    rel = np.partition(norm, 1, axis=1)[:, 1]
    perm = np.lexsort((np.arange(arr.shape[0]), -rel))
    return LLRTable(
        tables=[list(map(float, row)) for row in norm],
        hard=[int(h) for h in hard],
        reliability=[float(r) for r in rel],
        rel_perm=[int(p) for p in perm],
    )


def optimality_prune(pattern_cost: float, delta_tail: float, best_ew: float) -> bool:
    """True when a pattern may still improve the tentative decision."""
    return pattern_cost + delta_tail < best_ew


def candidate_bound(k: int, t: int, s: int, q: int) -> int:
    """Worst-case number of candidate constructions for one decode call."""
    t = min(t, k)
    return math.comb(k, t) * (q - 1) ** t + math.comb(s, t) * math.comb(k, t)


def _scaled_xor_into(f: FieldTable, word: list[int], scalar: int, row: Sequence[int]) -> None:
    if scalar == 0:
        return
    ls = f.log[scalar]
    antilog = f.antilog
    log = f.log
    qm1 = f.q - 1
    for j, rj in enumerate(row):
        if rj:
            word[j] ^= antilog[(ls + log[rj]) % qm1]


class _Search:
    """One enumeration run over a fixed table, dimension and coset offset.

    In best-codeword mode the threshold for pruning is the best weight seen;
    with a per-symbol table attached (coset mode) it is the largest table
    entry, since only candidates below it can still improve some entry.
    """

    def __init__(self, table: LLRTable, spec: RSCodeSpec, matrix: SystematicMatrix,
                 tuples, offset: list[int] | None,
                 t: int, s: int, counters: Counters, prune: bool):
        self.table = table
        self.spec = spec
        self.matrix = matrix
        self.tuples = tuples
        self.counters = counters
        self.prune = prune
        f = spec.field
        self.f = f
        l = spec.n
        self.l = l
        self.q = f.q
        K = spec.k
        self.K = K
        self.exhaustive = t >= K
        self.t = min(t, K)
        self.s = max(0, min(s, l - K))
        self.offset = offset
        self.perm = table.rel_perm
        if offset is None:
            self.trows = table.tables
            self.xt = table.hard
        else:
            q = self.q
            self.trows = [[table.tables[p][z ^ offset[p]] for z in range(q)] for p in range(l)]
            self.xt = [table.hard[p] ^ offset[p] for p in range(l)]
        # tails[d] = sum of the d smallest reliabilities anywhere in the word.
        rel_rank = [table.reliability[p] for p in self.perm]
        tails = [0.0] * (l + 1)
        acc = 0.0
        for d in range(1, l + 1):
            acc += rel_rank[l - d]
            tails[d] = acc
        self.tails = tails
        self.best_word: list[int] | None = None
        self.best_ew = math.inf
        self.best_dist = l + 1
        self.utable: list[float] | None = None
        self.ucol: list[int] | None = None
        self.thresh = math.inf

    # -- candidate bookkeeping -------------------------------------------

    def _ew_actual(self, word: Sequence[int]) -> float:
        tab = self.table.tables
        total = 0.0
        for p, c in enumerate(word):
            total += tab[p][c]
        self.counters.sums += self.l
        return total

    def _ew_translated(self, word: Sequence[int]) -> float:
        trows = self.trows
        total = 0.0
        for p, c in enumerate(word):
            total += trows[p][c]
        self.counters.sums += self.l
        return total

    def _offer(self, word: list[int], ew: float) -> None:
        """Account one constructed candidate (translated coordinates)."""
        self.counters.candidates += 1
        self.counters.cmps += 1
        if self.utable is not None:
            u = 0
            f = self.f
            ucol = self.ucol
            for p, c in enumerate(word):
                if c and ucol[p]:
                    u ^= f.antilog[(f.log[c] + f.log[ucol[p]]) % (f.q - 1)]
            self.counters.muls += self.l
            self.counters.sums += self.l
            if ew < self.utable[u]:
                self.utable[u] = ew
                self.thresh = max(self.utable)
        if ew < self.best_ew:
            self.best_ew = ew
            self.best_word = list(word)
            xt = self.xt
            self.best_dist = sum(1 for p in range(self.l) if word[p] != xt[p])

    def _threshold(self) -> float:
        return self.thresh if self.utable is not None else self.best_ew

    def _globally_done(self) -> bool:
        """No codeword other than the current best can beat the threshold."""
        delta = self.spec.d - self.best_dist
        if delta <= 0:
            return False
        return self.tails[min(delta, self.l)] >= self._threshold()

    # -- construction ------------------------------------------------------

    def reencode(self, values_by_rank: Sequence[int]) -> list[int]:
        """Codeword taking the given values on the information ranks."""
        word = [0] * self.l
        rows = self.matrix.rows
        for i, v in enumerate(values_by_rank):
            if v:
                _scaled_xor_into(self.f, word, v, rows[i])
        self.counters.muls += self.K * self.l
        self.counters.sums += self.K * self.l
        return word

    def run_order0(self) -> list[int]:
        xt = self.xt
        word = self.reencode([xt[self.perm[r]] for r in range(self.K)])
        self._offer(word, self._ew_translated(word))
        return word

    def run(self, pattern_budget: int | None = None) -> None:
        """Order-0, staged reprocessing, then cost-ordered matching.

        Stages 1..t are enumerated in full (lexicographic tuple order) when
        the plan budget allows.  The remaining budget goes to combined
        patterns of weight t+1..2t, visited in ascending pattern-cost order;
        their codewords come from the same re-encoding linearity as the
        stage candidates, so no candidate storage is needed.  The plan
        depends only on the sorted tuple stream and the budget, never on
        pruning outcomes.
        """
        c0 = self.run_order0()
        if self.K == self.l and self.utable is None:
            # No parity at all: the hard-decision word is already optimal.
            # (With a per-symbol table attached, enumeration still improves
            # the entries away from the argmin.)
            return
        if pattern_budget is None and not self.exhaustive:
            pattern_budget = candidate_bound(self.K, self.t, self.s, self.q) - 1
        remaining = pattern_budget
        qm1 = self.q - 1
        top = self.t if self.exhaustive else 2 * self.t
        for w in range(1, top + 1):
            if w > self.K:
                break
            size = math.comb(self.K, w) * qm1 ** w
            if w == self.t + 1:
                # Matching: pair the reprocessed perturbations.  Weights of
                # the combined words are screened in full through the
                # re-encoding linearity; only improvements are constructed,
                # so the candidate budget is spent on sure winners.
                if remaining is None or remaining > 0:
                    accepted = self._match_screen(c0, w, remaining)
                    if remaining is not None:
                        remaining -= accepted
                continue
            allowed = size if remaining is None else min(size, remaining)
            if remaining is not None:
                remaining -= allowed
            if allowed <= 0:
                continue
            if allowed == size:
                self._stage(c0, w, allowed)
            else:
                self._stage_cost_ordered(c0, w, allowed)

    def _stage(self, c0: list[int], w: int, allowed: int) -> None:
        """Weight-w test patterns in lexicographic tuple-index order.

        Every pattern in the plan consumes budget whether or not pruning
        skips its construction, keeping pruned and unpruned runs aligned.
        """
        tup = self.tuples
        M = len(tup)
        K = self.K
        prune = self.prune
        counters = self.counters
        f = self.f
        rows = self.matrix.rows
        l = self.l
        d = self.spec.d
        cost_arr = tup.cost
        rank_arr = tup.rank
        diff_arr = tup.diff
        budget = allowed
        dead_all = False
        idx = [0] * w

        def rec(depth: int, start: int, used: int, prefix_cost: float) -> bool:
            nonlocal budget, dead_all
            dead_succ = False
            for j in range(start, M):
                r = rank_arr[j]
                if r >= K or (used >> r) & 1:
                    continue
                if depth + 1 < w:
                    idx[depth] = j
                    if not rec(depth + 1, j + 1, used | (1 << r), prefix_cost + cost_arr[j]):
                        return False
                    continue
                # Complete pattern.
                if budget <= 0:
                    return False
                budget -= 1
                if not dead_all and not dead_succ:
                    if prune and self._globally_done():
                        dead_all = True
                    else:
                        cost = prefix_cost + cost_arr[j]
                        counters.sums += w
                        skip = False
                        if prune:
                            delta = max(d - self.best_dist - w, 0)
                            counters.cmps += 1
                            if not optimality_prune(cost, self.tails[min(delta, l)], self._threshold()):
                                skip = True
                                dead_succ = True  # successors share the prefix and cost more
                        if not skip:
                            idx[depth] = j
                            word = list(c0)
                            for a in range(w):
                                jj = idx[a]
                                _scaled_xor_into(f, word, diff_arr[jj], rows[rank_arr[jj]])
                            counters.muls += w * l
                            counters.sums += w * l
                            self._offer(word, self._ew_translated(word))
                if budget <= 0:
                    return False
            return True

        rec(0, 0, 0, 0.0)

    def _match_screen(self, c0: list[int], w: int, allowed: int | None) -> int:
        """Exact screening of all weight-w combined patterns.

        Re-encoding is linear in the information perturbation, so the full
        codeword of a combined pattern is the XOR of the order-0 word with
        the per-tuple row multiples, its ellipsoidal weight is the pattern
        cost plus the parity-part penalties, and its phase symbol (in coset
        mode) is a one-symbol XOR.  Screening therefore prices every
        combination without constructing it; candidates are accepted in
        ascending weight order and only while they improve, which keeps the
        constructed count within the plan budget.  Returns the number of
        accepted candidates.
        """
        tup = self.tuples
        K = self.K
        l = self.l
        f = self.f
        counters = self.counters
        idxs = [j for j in range(len(tup)) if tup.rank[j] < K]
        na = len(idxs)
        if na < w or (self.prune and self._globally_done()):
            return 0
        rows = self.matrix.rows
        # Per-tuple row multiple, full length; built once per stage.
        deltas = np.zeros((na, l), dtype=np.int64)
        for a, j in enumerate(idxs):
            word = [0] * l
            _scaled_xor_into(f, word, tup.diff[j], rows[tup.rank[j]])
            deltas[a] = word
        counters.muls += na * l
        ranks = np.array([tup.rank[j] for j in idxs])
        costs = np.array([tup.cost[j] for j in idxs])
        combos = np.array(list(itertools.combinations(range(na), w)), dtype=np.int64)
        keep = np.ones(len(combos), dtype=bool)
        for a in range(w):
            for b in range(a + 1, w):
                keep &= ranks[combos[:, a]] != ranks[combos[:, b]]
        combos = combos[keep]
        if len(combos) == 0:
            return 0
        nm_pos = np.array([self.perm[r] for r in range(K, l)], dtype=np.int64)
        trows = np.asarray(self.trows)
        c0_nm = np.array([c0[p] for p in nm_pos], dtype=np.int64)
        words_nm = np.broadcast_to(c0_nm, (len(combos), len(nm_pos))).copy()
        ew = costs[combos].sum(axis=1)
        for a in range(w):
            words_nm ^= deltas[combos[:, a]][:, nm_pos]
        for pi, p in enumerate(nm_pos):
            ew += trows[p][words_nm[:, pi]]
        counters.sums += len(combos) * (w + len(nm_pos) + w * len(nm_pos))
        order = np.argsort(ew, kind="stable")
        counters.cmps += len(combos)
        # Phase-symbol linearity for the coset table.
        if self.utable is not None:
            f_ = self.f
            ucol = self.ucol
            u_c0 = 0
            u_rows = []
            for p, c in enumerate(c0):
                if c and ucol[p]:
                    u_c0 ^= f_.antilog[(f_.log[c] + f_.log[ucol[p]]) % (f_.q - 1)]
            for a, j in enumerate(idxs):
                acc = 0
                for p in range(l):
                    d = deltas[a][p]
                    if d and ucol[p]:
                        acc ^= f_.antilog[(f_.log[d] + f_.log[ucol[p]]) % (f_.q - 1)]
                u_rows.append(int(acc))
            counters.muls += (na + 1) * l
        accepted = 0
        for idx in order:
            if allowed is not None and accepted >= allowed:
                break
            w_ew = float(ew[idx])
            counters.cmps += 1
            if w_ew >= self._threshold():
                break
            combo = combos[idx]
            improved = False
            if self.utable is not None:
                u = u_c0
                for a in range(w):
                    u ^= u_rows[combo[a]]
                if w_ew < self.utable[u]:
                    self.utable[u] = w_ew
                    self.thresh = max(self.utable)
                    improved = True
            if w_ew < self.best_ew:
                word = list(c0)
                for a in range(w):
                    for p in range(l):
                        word[p] ^= int(deltas[combo[a]][p])
                self.best_ew = w_ew
                self.best_word = word
                xt = self.xt
                self.best_dist = sum(1 for p in range(l) if word[p] != xt[p])
                improved = True
            if improved:
                accepted += 1
                counters.candidates += 1
        return accepted

    def _stage_cost_ordered(self, c0: list[int], w: int, allowed: int) -> None:
        """Weight-w patterns in ascending total-cost order, budget-truncated.

        Used when a stage does not fit the plan budget, which is the normal
        situation for the matching weights t+1..2t: only the likeliest
        pattern supports are visited.  Because costs arrive in ascending
        order, one failed optimality check kills the whole remainder of the
        stage (construction only; the walk continues for budget parity with
        unpruned runs).
        """
        import heapq

        tup = self.tuples
        K = self.K
        counters = self.counters
        f = self.f
        rows = self.matrix.rows
        l = self.l
        d = self.spec.d
        idxs = [j for j in range(len(tup)) if tup.rank[j] < K]
        if len(idxs) < w:
            return
        costs = tup.cost
        first = tuple(range(w))
        heap = [(sum(costs[idxs[p]] for p in first), first)]
        seen = {first}
        budget = allowed
        dead = False
        while heap and budget > 0:
            cost, combo = heapq.heappop(heap)
            for a in range(w):
                nxt = combo[a] + 1
                if nxt < len(idxs) and (a == w - 1 or nxt < combo[a + 1]):
                    cand = combo[:a] + (nxt,) + combo[a + 1:]
                    if cand not in seen:
                        seen.add(cand)
                        c2 = cost - costs[idxs[combo[a]]] + costs[idxs[nxt]]
                        heapq.heappush(heap, (c2, cand))
            tuple_idx = [idxs[p] for p in combo]
            ranks = [tup.rank[j] for j in tuple_idx]
            if len(set(ranks)) != w:
                continue
            budget -= 1
            if dead:
                continue
            if self.prune:
                if self._globally_done():
                    dead = True
                    continue
                delta = max(d - self.best_dist - w, 0)
                counters.cmps += 1
                if not optimality_prune(cost, self.tails[min(delta, l)], self._threshold()):
                    dead = True
                    continue
            word = list(c0)
            for j in tuple_idx:
                _scaled_xor_into(f, word, tup.diff[j], rows[tup.rank[j]])
            counters.muls += w * l
            counters.sums += w * l + w
            self._offer(word, self._ew_translated(word))


def _result(word: Sequence[int], ew: float, proven: bool,
            counters: Counters, before: Counters) -> DecoderResult:
    return DecoderResult(
        codeword=tuple(word),
        ew=ew,
        proven_ml=proven,
        candidates=counters.candidates - before.candidates,
        sums=counters.sums - before.sums,
        cmps=counters.cmps - before.cmps,
        muls=counters.muls - before.muls,
    )


def order0(table: LLRTable, spec: RSCodeSpec, matrix: SystematicMatrix | None = None,
           counters: Counters | None = None) -> DecoderResult:
    """Re-encode the hard decisions of the k most reliable positions."""
    counters = counters if counters is not None else Counters()
    before = counters.snapshot()
    if matrix is None:
        matrix = mris_generator_matrix(spec, [table.rel_perm[r] for r in range(spec.k)], counters)
    search = _Search(table, spec, matrix, _EMPTY_TUPLES, None, 0, 0, counters, prune=False)
    word = search.run_order0()
    return _result(word, search.best_ew, search.best_ew == 0.0, counters, before)


def decode(table: LLRTable, spec: RSCodeSpec, t: int, s: int | None = None, *,
           prune: bool = True, counters: Counters | None = None) -> DecoderResult:
    """Best-codeword search with reprocessing order t and control band size s.

    Constructs at most C(k,t)(q-1)^t + C(s,t)C(k,t) candidates.  The result
    is flagged proven-ML when the search provably visited a candidate set no
    other codeword can beat.
    """
    if s is None:
        s = spec.n - spec.k
    if t < 0 or t > spec.k:
        raise ValueError(f"reprocessing order t={t} out of range [0, {spec.k}]")
    if s < 0 or s > spec.n - spec.k:
        raise ValueError(f"control band s={s} out of range [0, {spec.n - spec.k}]")
    if s < t and t < spec.k:
        raise ValueError(f"control band s={s} must be at least t={t}")
    counters = counters if counters is not None else Counters()
    before = counters.snapshot()
    matrix = mris_generator_matrix(spec, [table.rel_perm[r] for r in range(spec.k)], counters)
    tuples = TupleStream(table) if t > 0 else _EMPTY_TUPLES
    search = _Search(table, spec, matrix, tuples, None, t, s, counters, prune)
    search.run()
    return _result(search.best_word, search.best_ew, _proven_ml(search), counters, before)


def _proven_ml(search: _Search) -> bool:
    """Every codeword outside the order-t ball costs at least the sum of the
    t+1 smallest MRIS reliabilities; beating that sum proves optimality."""
    if search.exhaustive:
        return True
    K = search.K
    t = search.t
    rel = [search.table.reliability[p] for p in search.perm[:K]]
    bound = sum(rel[K - 1 - t:K])
    stage_total = sum(math.comb(K, w) * (search.q - 1) ** w for w in range(1, t + 1))
    stages_complete = stage_total <= candidate_bound(K, t, search.s, search.q) - 1
    return stages_complete and search.best_ew <= bound


class CosetWorkspace:
    """Per-instance state for nested coset decoding over one table set.

    Reliability sorting and the tuple stream are computed once; systematic
    generator matrices of the shrinking code family are maintained
    incrementally.  phase_table() serves phases 0..l-1 in order, each call
    returning the per-symbol table of minimum ellipsoidal weights.
    """

    def __init__(self, table: LLRTable, field: FieldTable, t: int, s: int, *,
                 counters: Counters | None = None, prune: bool = True,
                 exhaustive: bool = False):
        l = table.length
        if l != field.q:
            raise ValueError("coset decoding requires kernel size equal to the field size")
        self.table = table
        self.field = field
        self.l = l
        self.t = t
        self.s = s
        self.prune = prune
        self.exhaustive = exhaustive
        self.counters = counters if counters is not None else Counters()
        self.tuples = TupleStream(table)
        self.specs = {k: rs_code(field, l, k, extended=True) for k in range(1, l + 1)}
        self.matrix = mris_generator_matrix(self.specs[l], list(table.rel_perm), self.counters)
        self.phase = 0

    def phase_table(self, offset: list[int], u_column: Sequence[int],
                    kernel_row: Sequence[int]) -> list[float]:
        """Min-EW table over the q values of the current phase symbol.

        offset is the kernel output of the already-decided phases, u_column
        the matching column of the kernel inverse, kernel_row this phase's
        kernel row (used to seed the per-value coverage fills).
        """
        K = self.l - self.phase
        sub = nested_shrink(self.matrix, self.specs[K - 1], self.counters) if K > 1 else None
        out = _coset_phase(
            self.table, self.tuples, self.specs[K], self.matrix, sub,
            offset, u_column, kernel_row,
            self.l if self.exhaustive else self.t, self.s,
            self.counters, self.prune,
        )
        self.phase += 1
        if sub is not None:
            self.matrix = sub
        return out

    def skip_phase(self) -> None:
        """Advance the matrix chain without computing a table (frozen phases)."""
        K = self.l - self.phase
        sub = nested_shrink(self.matrix, self.specs[K - 1], self.counters) if K > 1 else None
        self.phase += 1
        if sub is not None:
            self.matrix = sub


def coset_decode_all(table: LLRTable, spec: RSCodeSpec, offset: list[int],
                     u_column: Sequence[int], kernel_row: Sequence[int], *,
                     t: int, s: int, counters: Counters | None = None,
                     prune: bool = True) -> list[float]:
    """Single-phase convenience wrapper around the coset search.

    spec is the (l, l-i) member of the kernel's nested family; the returned
    table holds, for each value of the phase symbol, the smallest ellipsoidal
    weight over the matching coset, normalized to minimum zero.
    """
    counters = counters if counters is not None else Counters()
    K = spec.k
    perm = table.rel_perm
    matrix = mris_generator_matrix(spec, list(perm[:K]), counters)
    sub = None
    if K > 1:
        small = rs_code(spec.field, spec.n, K - 1, extended=spec.extended, b=spec.b)
        sub = nested_shrink(matrix, small, counters)
    tuples = TupleStream(table)
    return _coset_phase(table, tuples, spec, matrix, sub, offset, u_column,
                        kernel_row, t, s, counters, prune)


def _coset_phase(table: LLRTable, tuples, spec: RSCodeSpec,
                 matrix: SystematicMatrix, sub: SystematicMatrix | None,
                 offset: list[int], u_column: Sequence[int], kernel_row: Sequence[int],
                 t: int, s: int, counters: Counters, prune: bool) -> list[float]:
    f = spec.field
    l = spec.n
    search = _Search(table, spec, matrix, tuples, list(offset), t, s, counters, prune)
    search.utable = [math.inf] * f.q
    search.ucol = list(u_column)
    # Coverage fill first: one order-0 word per symbol value, obtained from
    # two re-encodings by linearity.  A sound pruning threshold needs every
    # entry finite before enumeration starts.
    base, shift = _fallback_pair(table, f, sub, offset, kernel_row, counters)
    xt = search.xt
    for u in range(f.q):
        if u == 0:
            actual = base
        else:
            actual = list(base)
            _scaled_xor_into(f, actual, u, shift)
            counters.muls += l
            counters.sums += l
        ew = search._ew_actual(actual)
        counters.cmps += 1
        counters.candidates += 1
        if ew < search.utable[u]:
            search.utable[u] = ew
        if ew < search.best_ew:
            translated = [actual[p] ^ offset[p] for p in range(l)]
            search.best_ew = ew
            search.best_word = translated
            search.best_dist = sum(1 for p in range(l) if translated[p] != xt[p])
    search.thresh = max(search.utable)
    search.run()
    lo = min(search.utable)
    counters.sums += f.q
    return [v - lo for v in search.utable]


def _fallback_pair(table: LLRTable, f: FieldTable, sub: SystematicMatrix | None,
                   offset: list[int], kernel_row: Sequence[int],
                   counters: Counters) -> tuple[list[int], list[int]]:
    """base and shift with word(u) = base + u * shift covering symbol u.

    word(u) is the order-0 completion, one dimension down, of the coset
    shifted by u copies of this phase's kernel row; linearity in u reduces
    the q fills to two re-encodings.
    """
    l = len(offset)
    if sub is None:
        return list(offset), list(kernel_row)
    hard = table.hard
    rows = sub.rows
    info = sub.info_positions

    def reenc(vals: Sequence[int]) -> list[int]:
        word = [0] * l
        for idx, v in enumerate(vals):
            if v:
                _scaled_xor_into(f, word, v, rows[idx])
        counters.muls += len(info) * l
        counters.sums += len(info) * l
        return word

    base = reenc([hard[p] ^ offset[p] for p in info])
    for p in range(l):
        base[p] ^= offset[p]
    shift = reenc([kernel_row[p] for p in info])
    for p in range(l):
        shift[p] ^= kernel_row[p]
    counters.sums += 2 * l
    return base, shift
