"""Polar codes with Reed-Solomon kernels.

The kernel is the l x l matrix whose columns evaluate the monomials
x^{l-1}, ..., x^0 at the points 0, 1, alpha, ..., alpha^{l-2}; its bottom K
rows generate the (l, K) extended evaluation code for every K.  Encoding
applies the digit-reversal permutation followed by the m-fold Kronecker
power of the kernel.  Two successive-cancellation decoders are provided: an
exact probability-domain recursion usable as a small-scale oracle, and the
production decoder that approximates each kernel-phase table by the minimum
ellipsoidal weight found by the ordered-statistics coset search.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .counters import Counters
from .gf import FieldTable
from .osd import CosetWorkspace, build_llr_table

__all__ = [
    "KernelMatrix",
    "PolarCodeSpec",
    "SCResult",
    "rs_kernel",
    "digit_reversal",
    "encode",
    "sc_decode_exact",
    "sc_decode_approx",
]


@dataclass(frozen=True)
class KernelMatrix:
    field: FieldTable
    l: int
    rows: tuple[tuple[int, ...], ...]
    inverse: tuple[tuple[int, ...], ...]

    def column_of_inverse(self, i: int) -> tuple[int, ...]:
        return tuple(self.inverse[p][i] for p in range(self.l))


def rs_kernel(field: FieldTable, l: int) -> KernelMatrix:
    """Evaluation-point kernel of size l <= q, with verified inverse."""
    if l > field.q:
        raise ValueError(f"kernel size {l} exceeds field size {field.q}")
    if l < 2:
        raise ValueError("kernel size must be at least 2")
    points = [0] + [field.alpha_pow(j) for j in range(l - 1)]
    rows = tuple(tuple(field.pow(p, l - 1 - r) for p in points) for r in range(l))
    inv = _invert(field, [list(r) for r in rows])
    # Paranoia: the inverse is used per candidate, so verify it once here.
    for i in range(l):
        for j in range(l):
            acc = 0
            for t in range(l):
                acc ^= field.mul(rows[i][t], inv[t][j])
            if acc != (1 if i == j else 0):
                raise AssertionError("kernel inversion failed")
    return KernelMatrix(field=field, l=l, rows=rows, inverse=tuple(tuple(r) for r in inv))


def _invert(f: FieldTable, mat: list[list[int]]) -> list[list[int]]:
    n = len(mat)
    a = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ValueError("kernel matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv_p = f.inv(a[col][col])
        a[col] = [f.mul(inv_p, v) for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                c = a[r][col]
                a[r] = [vr ^ f.mul(c, vc) for vr, vc in zip(a[r], a[col])]
    return [row[n:] for row in a]


def digit_reversal(index: int, l: int, m: int) -> int:
    """Reverse the base-l digits of an index in [0, l^m)."""
    n = l ** m
    if not 0 <= index < n:
        raise ValueError(f"index {index} out of range [0, {n})")
    out = 0
    for _ in range(m):
        out = out * l + index % l
        index //= l
    return out


@dataclass(frozen=True)
class PolarCodeSpec:
    kernel: KernelMatrix
    m: int
    frozen: frozenset[int]

    def __post_init__(self):
        n = self.n
        for i in self.frozen:
            if not 0 <= i < n:
                raise ValueError(f"frozen index {i} out of range [0, {n})")

    @property
    def n(self) -> int:
        return self.kernel.l ** self.m

    @property
    def k(self) -> int:
        return self.n - len(self.frozen)


def _kernel_output(f: FieldTable, kernel: KernelMatrix, v: Sequence[int]) -> list[int]:
    l = kernel.l
    out = [0] * l
    for t, vt in enumerate(v):
        if vt:
            lv = f.log[vt]
            row = kernel.rows[t]
            for j in range(l):
                if row[j]:
                    out[j] ^= f.antilog[(lv + f.log[row[j]]) % (f.q - 1)]
    return out


def _transform(f: FieldTable, kernel: KernelMatrix, u: Sequence[int]) -> list[int]:
    l = kernel.l
    if len(u) == l:
        return _kernel_output(f, kernel, u)
    step = len(u) // l
    groups = [_kernel_output(f, kernel, u[t * l:(t + 1) * l]) for t in range(step)]
    out = []
    for s in range(l):
        out.extend(_transform(f, kernel, [groups[t][s] for t in range(step)]))
    return out


def encode(spec: PolarCodeSpec, u: Sequence[int]) -> list[int]:
    """Codeword of the transform input u (frozen coordinates must be zero)."""
    if len(u) != spec.n:
        raise ValueError(f"input length {len(u)} != n={spec.n}")
    for i in spec.frozen:
        if u[i] != 0:
            raise ValueError(f"frozen coordinate {i} must be zero")
    return _transform(spec.kernel.field, spec.kernel, list(u))


# ---------------------------------------------------------------------------
# Successive cancellation.  Every subtree is a stream serving its input
# symbols in order: table(j) returns the phase-j table given commitments
# 0..j-1, commit(j, sym) fixes the symbol.  Inner streams group phases in
# blocks of l and push completed kernel outputs down to their children.


class _LeafStream:
    __slots__ = ("tab",)

    def __init__(self, tab):
        self.tab = tab

    def table(self, j):
        return self.tab

    def skip(self, j):
        return None

    def commit(self, j, sym):
        pass


class _ApproxNode:
    def __init__(self, children, ctx):
        self.children = children
        self.ctx = ctx
        self.ws: CosetWorkspace | None = None
        self.offset: list[int] | None = None
        self.group = -1

    def _ensure_group(self, g: int) -> None:
        if self.group == g:
            return
        ctx = self.ctx
        rows = [child.table(g) for child in self.children]
        table = build_llr_table(rows)
        self.ws = CosetWorkspace(table, ctx.field, ctx.t, ctx.s,
                                 counters=ctx.counters, prune=ctx.prune,
                                 exhaustive=ctx.exhaustive)
        self.offset = [0] * ctx.l
        self.group = g

    def table(self, j):
        g, i = divmod(j, self.ctx.l)
        self._ensure_group(g)
        return self.ws.phase_table(self.offset, self.ctx.kernel.column_of_inverse(i),
                                   self.ctx.kernel.rows[i])

    def skip(self, j):
        g, i = divmod(j, self.ctx.l)
        self._ensure_group(g)
        self.ws.skip_phase()

    def commit(self, j, sym):
        ctx = self.ctx
        g, i = divmod(j, ctx.l)
        if sym:
            f = ctx.field
            row = ctx.kernel.rows[i]
            ls = f.log[sym]
            off = self.offset
            for p in range(ctx.l):
                if row[p]:
                    off[p] ^= f.antilog[(ls + f.log[row[p]]) % (f.q - 1)]
        if i == ctx.l - 1:
            for s, child in enumerate(self.children):
                child.commit(g, self.offset[s])


class _ApproxCtx:
    def __init__(self, kernel: KernelMatrix, t: int, s: int, counters: Counters,
                 prune: bool, exhaustive: bool):
        self.kernel = kernel
        self.field = kernel.field
        self.l = kernel.l
        self.t = t
        self.s = s
        self.counters = counters
        self.prune = prune
        self.exhaustive = exhaustive


def _build_tree(node_cls, ctx, tables, m: int):
    l = ctx.l
    if m == 0:
        return _LeafStream(tables[0])
    size = l ** (m - 1)
    children = [_build_tree(node_cls, ctx, tables[s * size:(s + 1) * size], m - 1)
                for s in range(l)]
    return node_cls(children, ctx)


@dataclass
class SCResult:
    u_hat: list[int]
    counters: Counters
    tables: list | None = None
    genie_errors: list | None = None


def sc_decode_approx(spec: PolarCodeSpec, llr_tables, t: int = 1, s: int | None = None, *,
                     prune: bool = True, exhaustive: bool = False,
                     count_frozen: bool = False, genie_u: Sequence[int] | None = None,
                     record_tables: bool = False,
                     counters: Counters | None = None) -> SCResult:
    """Successive cancellation with per-kernel ordered-statistics tables.

    llr_tables is an (n, q) array of per-position symbol costs.  With
    genie_u given, every decision is replaced by the true symbol after
    recording whether the argmin would have disagreed.  Frozen phases skip
    the table computation unless count_frozen is set.
    """
    kernel = spec.kernel
    if kernel.l != kernel.field.q:
        raise ValueError("approximate decoding requires a full-size (l = q) kernel")
    n = spec.n
    arr = np.asarray(llr_tables, dtype=np.float64)
    if arr.shape != (n, kernel.field.q):
        raise ValueError(f"expected ({n}, {kernel.field.q}) tables, got {arr.shape}")
    if s is None:
        s = kernel.l
    counters = counters if counters is not None else Counters()
    ctx = _ApproxCtx(kernel, t, s, counters, prune, exhaustive)
    leaf_tabs = [list(map(float, row)) for row in arr]
    root = _build_tree(_ApproxNode, ctx, leaf_tabs, spec.m)
    u_hat = [0] * n
    tables_out: list | None = [] if record_tables else None
    genie_errors: list | None = [] if genie_u is not None else None
    for j in range(n):
        frozen = j in spec.frozen
        if frozen and not count_frozen and genie_u is None:
            root.skip(j)
            tab = None
        else:
            tab = root.table(j)
        decision = 0
        if tab is not None:
            best = min(range(len(tab)), key=lambda z: (tab[z], z))
            counters.cmps += len(tab)
            if not frozen:
                decision = best
            if genie_errors is not None:
                genie_errors.append(best != genie_u[j])
        if genie_u is not None:
            decision = int(genie_u[j])
        u_hat[j] = decision
        root.commit(j, decision)
        if tables_out is not None:
            tables_out.append(tab)
    return SCResult(u_hat=u_hat, counters=counters, tables=tables_out,
                    genie_errors=genie_errors)


# -- exact probability-domain decoder (oracle scale) ------------------------


class _ExactNode:
    def __init__(self, children, ctx):
        self.children = children
        self.ctx = ctx
        self.child_tabs = None
        self.prefix: list[int] = []
        self.group = -1

    def _ensure_group(self, g: int) -> None:
        if self.group == g:
            return
        self.child_tabs = [np.asarray(child.table(g), dtype=np.float64)
                           for child in self.children]
        self.prefix = []
        self.group = g

    def table(self, j):
        ctx = self.ctx
        g, i = divmod(j, ctx.l)
        self._ensure_group(g)
        f = ctx.field
        l = ctx.l
        q = f.q
        out = np.full(q, -np.inf)
        suffix_len = l - 1 - i
        for ui in range(q):
            scores = []
            for suffix in itertools.product(range(q), repeat=suffix_len):
                v = self.prefix + [ui] + list(suffix)
                c = _kernel_output(f, ctx.kernel, v)
                total = 0.0
                for sidx in range(l):
                    total += self.child_tabs[sidx][c[sidx]]
                scores.append(total)
            out[ui] = _logsumexp(np.array(scores))
        return out

    def commit(self, j, sym):
        ctx = self.ctx
        g, i = divmod(j, ctx.l)
        self._ensure_group(g)
        self.prefix.append(int(sym))
        if i == ctx.l - 1:
            outs = _kernel_output(ctx.field, ctx.kernel, self.prefix)
            for s, child in enumerate(self.children):
                child.commit(g, outs[s])


def _logsumexp(x: np.ndarray) -> float:
    mx = np.max(x)
    if not np.isfinite(mx):
        return float(mx)
    return float(mx + np.log(np.exp(x - mx).sum()))


class _ExactCtx:
    def __init__(self, kernel: KernelMatrix):
        self.kernel = kernel
        self.field = kernel.field
        self.l = kernel.l


def sc_decode_exact(spec: PolarCodeSpec, log_likelihood_tables, *,
                    guard: int = 5_000_000,
                    record_tables: bool = True) -> SCResult:
    """Exact successive cancellation by brute-force marginalization.

    Tables are unnormalized log-likelihoods log W(y|z).  Work grows as
    n * l * q^l, so this is an oracle for small kernels; the guard refuses
    configurations beyond roughly that many elementary steps.
    """
    kernel = spec.kernel
    n = spec.n
    q = kernel.field.q
    work = n * kernel.l * q ** kernel.l
    if work > guard:
        raise ValueError(f"exact decoding would take ~{work} steps (guard {guard})")
    arr = np.asarray(log_likelihood_tables, dtype=np.float64)
    if arr.shape != (n, q):
        raise ValueError(f"expected ({n}, {q}) tables, got {arr.shape}")
    ctx = _ExactCtx(kernel)
    root = _build_tree(_ExactNode, ctx, [arr[p] for p in range(n)], spec.m)
    u_hat = [0] * n
    tables_out: list | None = [] if record_tables else None
    for j in range(n):
        tab = np.asarray(root.table(j))
        if j in spec.frozen:
            decision = 0
        else:
            decision = int(np.argmax(tab))
        u_hat[j] = decision
        root.commit(j, decision)
        if tables_out is not None:
            tables_out.append(tab)
    return SCResult(u_hat=u_hat, counters=Counters(), tables=tables_out)
