"""Arithmetic in GF(2^m) using log/antilog tables.

Elements are plain ints in [0, q) holding the polynomial-basis coefficients
LSB-first (bit b is the coefficient of x^b).  Addition is XOR; products go
through discrete-log tables for the primitive element alpha = x.
"""

from __future__ import annotations

from dataclasses import dataclass, field

# Conventional primitive polynomials, bitmask form (bit i = coefficient of x^i).
DEFAULT_PRIMITIVE_POLYS = {
    2: 0b111,      # x^2 + x + 1
    3: 0b1011,     # x^3 + x + 1
    4: 0b10011,    # x^4 + x + 1
}


@dataclass(frozen=True)
class FieldTable:
    """Immutable GF(2^m) tables; safe to share across workers."""

    m: int
    q: int
    primitive_poly: int
    log: tuple[int, ...]      # log[z] for z != 0; log[0] is a sentinel (unused)
    antilog: tuple[int, ...]  # antilog[e] for 0 <= e < q - 1

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.antilog[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero in GF(2^m)")
        return self.antilog[(-self.log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        # 0^0 is taken as 1 so monomial evaluation covers the constant row.
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of zero in GF(2^m)")
            return 0
        return self.antilog[(self.log[a] * e) % (self.q - 1)]

    @property
    def alpha(self) -> int:
        return 2

    def alpha_pow(self, e: int) -> int:
        """alpha^e for any integer e."""
        return self.antilog[e % (self.q - 1)]


def build_field(m: int, primitive_poly: int | None = None) -> FieldTable:
    """Build log/antilog tables for GF(2^m).

    m in {2, 3, 4} uses the fixed conventional polynomial so tables are
    bit-exact reproducible; other m require an explicit primitive polynomial.
    """
    if primitive_poly is None:
        if m not in DEFAULT_PRIMITIVE_POLYS:
            raise ValueError(f"unsupported extension degree m={m}; supply a primitive polynomial")
        primitive_poly = DEFAULT_PRIMITIVE_POLYS[m]
    if m < 1:
        raise ValueError("extension degree must be positive")
    q = 1 << m
    antilog = [0] * (q - 1)
    log = [0] * q
    x = 1
    for e in range(q - 1):
        if x == 1 and e > 0:
            raise ValueError(f"polynomial {primitive_poly:#b} is not primitive for m={m}")
        antilog[e] = x
        log[x] = e
        x <<= 1
        if x & q:
            x ^= primitive_poly
    if x != 1:
        raise ValueError(f"polynomial {primitive_poly:#b} is not primitive for m={m}")
    if len(set(antilog)) != q - 1:
        raise ValueError(f"polynomial {primitive_poly:#b} does not generate all nonzero elements")
    return FieldTable(m=m, q=q, primitive_poly=primitive_poly,
                      log=tuple(log), antilog=tuple(antilog))


# ---------------------------------------------------------------------------
# Polynomial helpers over a FieldTable.  Coefficient lists are ascending
# (index i = coefficient of x^i).

def poly_mul(f: FieldTable, a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        la = f.log[ai]
        for j, bj in enumerate(b):
            if bj:
                out[i + j] ^= f.antilog[(la + f.log[bj]) % (f.q - 1)]
    return out


def poly_eval(f: FieldTable, coeffs: list[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = f.mul(acc, x) ^ c
    return acc
