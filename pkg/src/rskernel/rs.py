"""Reed-Solomon and extended Reed-Solomon codes.

Supports systematic encoding, syndrome computation, algebraic erasure
filling, re-encoding from an arbitrary information set, and incremental
maintenance of systematic generator matrices across a nested code family.

A plain (n, k) code has n = q - 1 and consecutive roots alpha^b..alpha^{b+n-k-1}.
An extended code has n = q and stores the overall-parity coordinate at slot 0,
so slot j >= 1 of an extended codeword is inner-code position j - 1.  The
degenerate k = n case (the whole space, no parity) is accepted so nested
chains can start at full dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

from .counters import Counters
from .gf import FieldTable, poly_mul

__all__ = [
    "RSCodeSpec",
    "SystematicMatrix",
    "rs_code",
    "generator_poly",
    "encode",
    "syndromes",
    "decode_erasures",
    "codeword_from_info_set",
    "mris_generator_matrix",
    "nested_shrink",
]


@dataclass(frozen=True)
class RSCodeSpec:
    field: FieldTable
    n: int
    k: int
    b: int
    extended: bool

    @property
    def d(self) -> int:
        return self.n - self.k + 1


def rs_code(field: FieldTable, n: int, k: int, b: int = 1, extended: bool = False) -> RSCodeSpec:
    if extended:
        if n != field.q:
            raise ValueError(f"extended code length must be q={field.q}, got {n}")
        if b != 1:
            raise ValueError("extended codes use b=1")
    else:
        if n != field.q - 1:
            raise ValueError(f"code length must be q-1={field.q - 1}, got {n}")
    if not 1 <= k <= n:
        raise ValueError(f"dimension k={k} out of range for n={n}")
    return RSCodeSpec(field=field, n=n, k=k, b=b, extended=extended)


def _inner_spec(spec: RSCodeSpec) -> RSCodeSpec:
    return RSCodeSpec(field=spec.field, n=spec.field.q - 1, k=spec.k, b=1, extended=False)


def generator_poly(spec: RSCodeSpec) -> list[int]:
    """Monic generator polynomial (ascending coefficients) of a plain code."""
    if spec.extended:
        raise ValueError("extended codes are defined by the parity relation, not a generator polynomial")
    f = spec.field
    g = [1]
    for i in range(spec.n - spec.k):
        g = poly_mul(f, g, [f.alpha_pow(spec.b + i), 1])
    return g


def encode(spec: RSCodeSpec, message: list[int]) -> list[int]:
    """Systematic encoding; message occupies the last k coordinates.

    For extended codes the inner codeword is encoded first and slot 0 is
    set to the sum of the inner coordinates.
    """
    if len(message) != spec.k:
        raise ValueError(f"message length {len(message)} != k={spec.k}")
    if spec.k == spec.n:
        return list(message)
    if spec.extended:
        inner = encode(_inner_spec(spec), message)
        parity = 0
        for c in inner:
            parity ^= c
        return [parity] + inner
    f = spec.field
    g = generator_poly(spec)
    r = spec.n - spec.k
    # Parity = remainder of message(x) * x^r modulo g(x), synthetic division.
    buf = [0] * r + list(message)
    for i in range(spec.n - 1, r - 1, -1):
        coef = buf[i]
        if coef:
            lc = f.log[coef]
            for j in range(r):
                if g[j]:
                    buf[i - r + j] ^= f.antilog[(lc + f.log[g[j]]) % (f.q - 1)]
    return buf[:r] + list(message)


def syndromes(spec: RSCodeSpec, received: list[int], counters: Counters | None = None) -> list[int]:
    """Power-sum syndromes; all zero exactly on codewords.

    Erased coordinates must already be replaced by zeros.  For extended
    codes the first entry is the overall parity check and the rest are the
    inner-code syndromes.
    """
    if spec.k == spec.n:
        return []
    f = spec.field
    if spec.extended:
        inner = received[1:]
        parity = received[0]
        for c in inner:
            parity ^= c
        out = [parity] + _power_syndromes(f, inner, spec.b, spec.n - spec.k - 1, counters)
        return out
    return _power_syndromes(f, received, spec.b, spec.n - spec.k, counters)


def _power_syndromes(f: FieldTable, word: list[int], b: int, count: int,
                     counters: Counters | None = None) -> list[int]:
    out = []
    for i in range(count):
        acc = 0
        e = b + i
        for j, y in enumerate(word):
            if y:
                acc ^= f.antilog[(f.log[y] + j * e) % (f.q - 1)]
        out.append(acc)
    if counters is not None:
        counters.muls += count * len(word)
        counters.sums += count * len(word)
    return out


class _ErasureFill:
    """Forney filling for a fixed erasure set.

    The locator polynomial and per-position denominators depend only on the
    erased positions, so they are computed once and reused across words that
    share the erasure set (each row of a systematic matrix, for instance).
    `positions` are exponent positions, i.e. the erased coordinate j has
    locator alpha^j.
    """

    def __init__(self, field: FieldTable, positions: list[int], b: int, n_syn: int,
                 counters: Counters | None = None):
        f = field
        self.field = f
        self.positions = positions
        self.b = b
        self.n_syn = n_syn
        t = len(positions)
        if t > n_syn:
            raise ValueError(f"{t} erasures exceed the correctable limit {n_syn}")
        X = [f.alpha_pow(p) for p in positions]
        self.X = X
        lam = [1]
        for x in X:
            lam = poly_mul(f, lam, [1, x])
        self.lam = lam
        # prefactor_j = X_j^{-b} / prod_{l != j} (1 - X_l / X_j)
        self.xinv = [f.inv(x) for x in X]
        self.pref = []
        for j, x in enumerate(X):
            den = 1
            for l, xl in enumerate(X):
                if l != j:
                    den = f.mul(den, 1 ^ f.mul(xl, self.xinv[j]))
            num = f.pow(self.xinv[j], b) if b else 1
            self.pref.append(f.div(num, den))
        if counters is not None:
            counters.muls += t * t + 2 * t + t * (t + 1) // 2
            counters.sums += t * t

    def fill(self, syn: list[int], counters: Counters | None = None) -> list[int]:
        """Erased values for a word whose syndromes are `syn`."""
        f = self.field
        t = len(self.X)
        if t == 0:
            return []
        # gamma = lambda * S mod x^{n_syn}
        gamma = [0] * self.n_syn
        for i, li in enumerate(self.lam):
            if li == 0:
                continue
            ll = f.log[li]
            for j in range(min(len(syn), self.n_syn - i)):
                if syn[j]:
                    gamma[i + j] ^= f.antilog[(ll + f.log[syn[j]]) % (f.q - 1)]
        out = []
        for j in range(t):
            acc = 0
            xi = self.xinv[j]
            for c in reversed(gamma):
                acc = f.mul(acc, xi) ^ c
            out.append(f.mul(self.pref[j], acc))
        if counters is not None:
            counters.muls += len(self.lam) * self.n_syn + t * (self.n_syn + 1)
            counters.sums += len(self.lam) * self.n_syn + t * self.n_syn
        return out


def decode_erasures(spec: RSCodeSpec, received: list[int], erased: list[int],
                    counters: Counters | None = None) -> list[int]:
    """Fill erased coordinates of a codeword.

    `erased` lists slot indices; the non-erased coordinates must be
    consistent with some codeword (pure erasure filling, no error
    correction).  At most d - 1 erasures are recoverable.
    """
    erased = sorted(set(erased))
    t = len(erased)
    if t == 0:
        return list(received)
    if t > spec.d - 1:
        raise ValueError(f"{t} erasures exceed d-1={spec.d - 1}")
    word = list(received)
    for j in erased:
        word[j] = 0
    f = spec.field
    if not spec.extended:
        ctx = _ErasureFill(f, erased, spec.b, spec.n - spec.k, counters)
        syn = _power_syndromes(f, word, spec.b, spec.n - spec.k, counters)
        vals = ctx.fill(syn, counters)
        for j, v in zip(erased, vals):
            word[j] = v
        return word
    # Extended code: slot 0 is the parity coordinate.
    if 0 in erased:
        inner_erased = [j - 1 for j in erased if j != 0]
        if inner_erased:
            ctx = _ErasureFill(f, inner_erased, 1, f.q - 1 - spec.k, counters)
            syn = _power_syndromes(f, word[1:], 1, f.q - 1 - spec.k, counters)
            vals = ctx.fill(syn, counters)
            for j, v in zip(inner_erased, vals):
                word[j + 1] = v
        parity = 0
        for c in word[1:]:
            parity ^= c
        if counters is not None:
            counters.sums += spec.n - 1
        word[0] = parity
        return word
    # Parity coordinate known: fold it into an exponent-0 check so that the
    # syndromes cover d - 1 consecutive powers starting at zero.
    inner_erased = [j - 1 for j in erased]
    ctx = _ErasureFill(f, inner_erased, 0, spec.n - spec.k, counters)
    syn = _power_syndromes(f, word[1:], 0, spec.n - spec.k, counters)
    syn[0] ^= word[0]
    vals = ctx.fill(syn, counters)
    for j, v in zip(inner_erased, vals):
        word[j + 1] = v
    return word


def codeword_from_info_set(spec: RSCodeSpec, positions: list[int], values: list[int],
                           counters: Counters | None = None) -> list[int]:
    """The unique codeword taking `values` on the k distinct `positions`."""
    if len(positions) != spec.k or len(set(positions)) != spec.k:
        raise ValueError("positions must be k distinct indices")
    if len(values) != spec.k:
        raise ValueError("values length must equal k")
    word = [0] * spec.n
    known = set(positions)
    for p, v in zip(positions, values):
        word[p] = v
    erased = [j for j in range(spec.n) if j not in known]
    return decode_erasures(spec, word, erased, counters)


@dataclass
class SystematicMatrix:
    """Generator matrix in systematic form on an ordered information set."""

    spec: RSCodeSpec
    info_positions: tuple[int, ...]
    rows: list[list[int]]

    @property
    def k(self) -> int:
        return len(self.rows)


def mris_generator_matrix(spec: RSCodeSpec, positions: list[int],
                          counters: Counters | None = None) -> SystematicMatrix:
    """Systematic generator matrix on an arbitrary ordered information set.

    Row i is the codeword with 1 at positions[i] and 0 at the other listed
    positions; the remaining entries are produced by erasure filling with a
    locator polynomial shared across rows, which keeps the cost at
    O(k (n-k)^2) field operations instead of Gaussian elimination's O(k^2 n).
    """
    k = spec.k
    if len(positions) != k or len(set(positions)) != k:
        raise ValueError("positions must be k distinct indices")
    n = spec.n
    f = spec.field
    rows = []
    if k == n:
        for p in positions:
            row = [0] * n
            row[p] = 1
            rows.append(row)
        return SystematicMatrix(spec, tuple(positions), rows)
    known = set(positions)
    erased = [j for j in range(n) if j not in known]
    if not spec.extended:
        ctx = _ErasureFill(f, erased, spec.b, n - k, counters)
        for p in positions:
            row = [0] * n
            row[p] = 1
            # Syndromes of a unit vector are plain powers of alpha.
            syn = [f.alpha_pow(p * (spec.b + i)) for i in range(n - k)]
            if counters is not None:
                counters.muls += n - k
            vals = ctx.fill(syn, counters)
            for j, v in zip(erased, vals):
                row[j] = v
            rows.append(row)
        return SystematicMatrix(spec, tuple(positions), rows)
    if 0 not in known:
        # Parity slot is erased: fill against the inner code, then sum.
        inner_erased = [j - 1 for j in erased if j != 0]
        ctx = _ErasureFill(f, inner_erased, 1, f.q - 1 - k, counters)
        for p in positions:
            row = [0] * n
            row[p] = 1
            ip = p - 1
            syn = [f.alpha_pow(ip * (1 + i)) for i in range(f.q - 1 - k)]
            if counters is not None:
                counters.muls += f.q - 1 - k
            vals = ctx.fill(syn, counters)
            for j, v in zip(inner_erased, vals):
                row[j + 1] = v
            parity = 0
            for c in row[1:]:
                parity ^= c
            if counters is not None:
                counters.sums += n - 1
            row[0] = parity
            rows.append(row)
        return SystematicMatrix(spec, tuple(positions), rows)
    # Parity slot is part of the information set.
    inner_erased = [j - 1 for j in erased]
    ctx = _ErasureFill(f, inner_erased, 0, n - k, counters)
    for p in positions:
        row = [0] * n
        row[p] = 1
        if p == 0:
            syn = [0] * (n - k)
            syn[0] = 1
        else:
            ip = p - 1
            syn = [f.alpha_pow(ip * i) for i in range(n - k)]
            if counters is not None:
                counters.muls += n - k
        vals = ctx.fill(syn, counters)
        for j, v in zip(inner_erased, vals):
            row[j + 1] = v
        rows.append(row)
    return SystematicMatrix(spec, tuple(positions), rows)


def _extra_check_vector(spec_small: RSCodeSpec) -> list[int]:
    """Dual vector separating the (n, K-1) member from its (n, K) parent.

    The parent's codewords that also satisfy <c, h> = 0 are exactly the
    smaller code, and h does not vanish on the parent.
    """
    f = spec_small.field
    n = spec_small.n
    K = spec_small.k + 1
    if spec_small.extended:
        h = [0] * n
        h[0] = 1 if K == f.q else 0
        e = f.q - K
        for j in range(1, n):
            h[j] = f.alpha_pow((j - 1) * e)
        return h
    e = spec_small.b + n - K
    return [f.alpha_pow(j * e) for j in range(n)]


def nested_shrink(matrix: SystematicMatrix, spec_small: RSCodeSpec,
                  counters: Counters | None = None) -> SystematicMatrix:
    """Systematic matrix of the (n, K-1) subcode from the (n, K) parent's.

    Each surviving row is corrected by a multiple of the dropped row so it
    lands in the subcode; the information set loses its last position, which
    moves to the check part.  The result is identical to building the
    subcode matrix from scratch, at (K-1)(n-K+1) multiply cost.
    """
    K = matrix.k
    parent = matrix.spec
    if spec_small.k != K - 1:
        raise ValueError(f"sub-spec dimension {spec_small.k} != K-1={K - 1}")
    if spec_small.k < 1:
        raise ValueError("cannot shrink below dimension 1")
    if (spec_small.n, spec_small.extended, spec_small.b) != (parent.n, parent.extended, parent.b):
        raise ValueError("sub-spec is not the nested subcode of the matrix's code")
    f = parent.field
    n = parent.n
    h = _extra_check_vector(spec_small)
    info = matrix.info_positions
    check_slots = [j for j in range(n) if j not in set(info)]
    drop = info[K - 1]
    touched = check_slots + [drop]

    def sigma(row: list[int], p: int) -> int:
        acc = h[p]
        for c in check_slots:
            if row[c] and h[c]:
                acc ^= f.antilog[(f.log[row[c]] + f.log[h[c]]) % (f.q - 1)]
        return acc

    s_last = sigma(matrix.rows[K - 1], drop)
    if s_last == 0:
        raise ValueError("dropped row already lies in the subcode; matrix/spec mismatch")
    inv_last = f.inv(s_last)
    last = matrix.rows[K - 1]
    new_rows = []
    for i in range(K - 1):
        row = list(matrix.rows[i])
        mult = f.mul(sigma(row, info[i]), inv_last)
        if mult:
            lm = f.log[mult]
            for j in touched:
                if last[j]:
                    row[j] ^= f.antilog[(lm + f.log[last[j]]) % (f.q - 1)]
        new_rows.append(row)
    if counters is not None:
        counters.muls += (K - 1) * (len(check_slots) + 2)
        counters.sums += (K - 1) * (len(check_slots) + len(touched))
    return SystematicMatrix(spec_small, info[:-1], new_rows)
