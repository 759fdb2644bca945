"""Deterministic binary fields GF(2^n), optionally carrying the subfield GF(2^m).

Every context uses the canonical modulus for its degree: the irreducible
polynomial whose coefficient bitstring, read as an integer, is least.  A
frozen table covers degrees 1..40, with a runtime sieve as fallback, so two
processes always agree on element representations.  Elements are residue
classes stored as plain bit masks; the FieldElem wrapper carries a context
reference and refuses cross-context arithmetic.

For n <= 16 a context builds log/antilog tables on first use; larger fields
multiply via carryless word products followed by byte-table reduction.
"""

from __future__ import annotations

from .gf2poly import BinPoly, _clmul_word
from .intarith import factorize, prime_factors

__all__ = [
    "N_CAP",
    "LOG_TABLE_MAX_N",
    "FieldCtx",
    "FieldElem",
    "make_field",
    "elem_mul",
    "elem_inv",
    "elem_pow",
    "frobenius_q",
    "omega",
    "unit_circle",
    "in_base_field",
    "mult_order",
]

N_CAP = 40
LOG_TABLE_MAX_N = 16

# Least irreducible of each degree, as a coefficient bitmask (leading bit set).
# Frozen output of the sieve below; regenerated and checked by the test suite.
CANONICAL_MODULUS = {
    1: 0x2, 2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83, 8: 0x11B,
    9: 0x203, 10: 0x409, 11: 0x805, 12: 0x1009, 13: 0x201B, 14: 0x4021,
    15: 0x8003, 16: 0x1002B, 17: 0x20009, 18: 0x40009, 19: 0x80027,
    20: 0x100009, 21: 0x200005, 22: 0x400003, 23: 0x800021, 24: 0x100001B,
    25: 0x2000009, 26: 0x400001B, 27: 0x8000027, 28: 0x10000003,
    29: 0x20000005, 30: 0x40000003, 31: 0x80000009, 32: 0x10000008D,
    33: 0x20000004B, 34: 0x40000001B, 35: 0x800000005, 36: 0x1000000035,
    37: 0x200000003F, 38: 0x4000000063, 39: 0x8000000011, 40: 0x10000000039,
}


def is_irreducible(bits: int) -> bool:
    """Irreducibility over GF(2): no factor of degree <= deg/2 shares a root."""
    if bits <= 1:
        return False
    from .gf2poly import _divmod, _gcd, _mul

    b = 2
    for _ in range((bits.bit_length() - 1) // 2):
        b = _divmod(_mul(b, b), bits)[1]
        if _gcd(b ^ 2, bits) != 1:
            return False
    return True


def canonical_modulus(n: int) -> int:
    """The least irreducible bitmask of degree n (table hit or runtime sieve)."""
    got = CANONICAL_MODULUS.get(n)
    if got is not None:
        return got
    c = 1 << n
    while not is_irreducible(c):
        c += 1
    return c


class FieldCtx:
    """Immutable description of GF(2^n); build via :func:`make_field`."""

    __slots__ = (
        "n", "modulus", "order", "subfield_m",
        "_exp", "_log", "_gen", "_fold", "_exp_np",
    )

    def __init__(self, n: int, modulus: int, subfield_m):
        self.n = n
        self.modulus = modulus
        self.order = (1 << n) - 1
        self.subfield_m = subfield_m
        self._exp = None
        self._log = None
        self._gen = None
        self._fold = None
        self._exp_np = None
        if n <= LOG_TABLE_MAX_N:
            self._build_tables()

    # -- raw bit-mask arithmetic ------------------------------------------

    def mul(self, a: int, b: int) -> int:
        if self._exp is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return self._reduce(_clmul_word(a, b))

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        if self._exp is not None:
            k = self._log[a]
            return self._exp[self.order - k] if k else 1
        return self.pow(a, self.order - 1)

    def pow(self, a: int, e: int) -> int:
        """a^e with e reduced mod 2^n - 1 for a != 0; 0^0 = 1, 0^e = 0."""
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is not None:
            return self._exp[self._log[a] * (e % self.order) % self.order]
        e %= self.order
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def frob_q(self, a: int) -> int:
        if self.subfield_m is None:
            raise ValueError("context has no subfield structure")
        for _ in range(self.subfield_m):
            a = self.mul(a, a)
        return a

    def eval_poly_bits(self, poly_bits: int, x: int) -> int:
        """Horner evaluation of a GF(2)[x] polynomial at the element x."""
        acc = 0
        for k in range(poly_bits.bit_length() - 1, -1, -1):
            acc = self.mul(acc, x) ^ (poly_bits >> k & 1)
        return acc

    def generator(self) -> int:
        """Smallest bit mask generating the multiplicative group."""
        if self._gen is None:
            if self.order == 1:
                self._gen = 1
            else:
                ps = prime_factors(self.order)
                g = 2
                while any(self._pow_raw(g, self.order // p) == 1 for p in ps):
                    g += 1
                self._gen = g
        return self._gen

    # -- element wrappers --------------------------------------------------

    def elem(self, bits: int) -> "FieldElem":
        if not 0 <= bits <= self.order:
            raise ValueError(f"bit mask {bits:#x} outside GF(2^{self.n})")
        return FieldElem(self, bits)

    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    def elements(self):
        """All field elements in bit-ascending order."""
        return (FieldElem(self, b) for b in range(1 << self.n))

    # -- internals ----------------------------------------------------------

    def _pow_raw(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            e >>= 1
        return r

    def _mul_raw(self, a, b):
        r = 0
        while b:
            if b & 1:
                r ^= a
            a <<= 1
            if a >> self.n:
                a ^= self.modulus
            b >>= 1
        return r

    def _reduce(self, p: int) -> int:
        if self._fold is None:
            # fold[t][byte] = byte * x^(n + 8t) mod modulus, for the high part
            folds = []
            for t in range((self.n + 6) // 8):
                tab = []
                for byte in range(256):
                    v = byte << (self.n + 8 * t)
                    while v.bit_length() > self.n:
                        v ^= self.modulus << (v.bit_length() - 1 - self.n)
                    tab.append(v)
                folds.append(tab)
            self._fold = folds
        lo = p & ((1 << self.n) - 1)
        hi = p >> self.n
        t = 0
        while hi:
            lo ^= self._fold[t][hi & 0xFF]
            hi >>= 8
            t += 1
        return lo

    def _build_tables(self):
        g = self.generator()
        order = self.order
        exp = [1] * (2 * order + 1)
        log = [0] * (1 << self.n)
        v = 1
        for k in range(order):
            exp[k] = v
            log[v] = k
            v = self._mul_raw(v, g)
        if v != 1:
            raise AssertionError("generator order mismatch")
        for k in range(order, 2 * order + 1):
            exp[k] = exp[k - order]
        self._exp = exp
        self._log = log

    def exp_array(self):
        """Antilog table as a numpy int64 array (brute-force sweeps)."""
        if self._exp_np is None:
            import numpy as np

            if self._exp is not None:
                self._exp_np = np.array(self._exp[: self.order], dtype=np.int64)
            else:
                arr = np.empty(self.order, dtype=np.int64)
                g = self.generator()
                v = 1
                mul = self._mul_raw if g != 2 else None
                if g == 2:
                    n, modulus = self.n, self.modulus
                    for k in range(self.order):
                        arr[k] = v
                        v <<= 1
                        if v >> n:
                            v ^= modulus
                else:
                    for k in range(self.order):
                        arr[k] = v
                        v = mul(v, g)
                self._exp_np = arr
        return self._exp_np

    def __eq__(self, other):
        if isinstance(other, FieldCtx):
            return (self.n, self.modulus, self.subfield_m) == (
                other.n, other.modulus, other.subfield_m)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.modulus, self.subfield_m))

    def __repr__(self):
        sub = f", subfield_m={self.subfield_m}" if self.subfield_m else ""
        return f"FieldCtx(n={self.n}, modulus={BinPoly(self.modulus)!r}{sub})"


class FieldElem:
    """Element of a FieldCtx: a residue-class bit mask plus its context."""

    __slots__ = ("ctx", "bits")

    def __init__(self, ctx: FieldCtx, bits: int):
        self.ctx = ctx
        self.bits = bits

    def _check(self, other) -> int:
        if not isinstance(other, FieldElem):
            raise TypeError(f"expected FieldElem, got {type(other).__name__}")
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise ValueError("field context mismatch")
        return other.bits

    def __add__(self, other):
        return FieldElem(self.ctx, self.bits ^ self._check(other))

    __sub__ = __add__

    def __mul__(self, other):
        return FieldElem(self.ctx, self.ctx.mul(self.bits, self._check(other)))

    def __truediv__(self, other):
        return FieldElem(self.ctx, self.ctx.mul(self.bits, self.ctx.inv(self._check(other))))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow(self.bits, e))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.inv(self.bits))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.bits == other.bits and self.ctx == other.ctx
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.n, self.ctx.modulus, self.bits))

    def __bool__(self):
        return bool(self.bits)

    def hex(self) -> str:
        """Text form: field size prefix plus the representative's hex mask."""
        return f"gf{1 << self.ctx.n}:{self.bits:#x}"

    def __repr__(self):
        return self.hex()


_CTX_CACHE: dict[tuple, FieldCtx] = {}


def make_field(n: int, subfield_m: int | None = None, *, n_cap: int = N_CAP) -> FieldCtx:
    """Field context with the canonical modulus of degree n (cached).

    When subfield_m is given, n must equal 2*subfield_m and the context
    gains the Frobenius x -> x^(2^m) plus unit-circle machinery.
    """
    if not 1 <= n <= n_cap:
        raise ValueError(f"extension degree {n} outside [1, {n_cap}]")
    if subfield_m is not None and n != 2 * subfield_m:
        raise ValueError(f"subfield_m={subfield_m} inconsistent with n={n}")
    key = (n, subfield_m)
    ctx = _CTX_CACHE.get(key)
    if ctx is None:
        ctx = FieldCtx(n, canonical_modulus(n), subfield_m)
        _CTX_CACHE[key] = ctx
    return ctx


def elem_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    """Field product; contexts must match."""
    return a * b


def elem_inv(a: FieldElem) -> FieldElem:
    """Multiplicative inverse of a nonzero element."""
    return a.inverse()


def elem_pow(a: FieldElem, e: int) -> FieldElem:
    """a^e with exponent reduced mod 2^n - 1 for a != 0; 0^0 = 1."""
    return a ** e


def frobenius_q(x: FieldElem) -> FieldElem:
    """Conjugation x -> x^(2^m) over the subfield, by m repeated squarings."""
    return FieldElem(x.ctx, x.ctx.frob_q(x.bits))


def omega(ctx: FieldCtx) -> FieldElem:
    """The order-3 root of x^2 + x + 1 whose bit mask is smaller.

    Requires n even (so that 3 divides 2^n - 1).
    """
    if ctx.n % 2:
        raise ValueError("omega needs an even extension degree")
    w = ctx.pow(ctx.generator(), ctx.order // 3)
    return ctx.elem(min(w, ctx.sqr(w)))


def unit_circle(ctx: FieldCtx) -> list[FieldElem]:
    """All q+1 solutions of x^(q+1) = 1, in bit-ascending order."""
    zs = _unit_circle_bits(ctx)
    return [FieldElem(ctx, b) for b in zs]


def _unit_circle_bits(ctx: FieldCtx) -> list[int]:
    if ctx.subfield_m is None:
        raise ValueError("unit circle needs subfield structure")
    q = 1 << ctx.subfield_m
    zeta = ctx.pow(ctx.generator(), q - 1)
    out = []
    v = 1
    for _ in range(q + 1):
        out.append(v)
        v = ctx.mul(v, zeta)
    if v != 1:
        raise AssertionError("unit circle enumeration did not close")
    out.sort()
    return out


def in_base_field(x: FieldElem) -> bool:
    """True iff x is fixed by the subfield Frobenius."""
    return x.ctx.frob_q(x.bits) == x.bits


def mult_order(x: FieldElem) -> int:
    """Multiplicative order, by descending from 2^n - 1 through its primes."""
    if x.bits == 0:
        raise ValueError("zero has no multiplicative order")
    ctx = x.ctx
    order = ctx.order
    if order == 1:
        return 1
    for p, k in factorize(order).items():
        for _ in range(k):
            if ctx.pow(x.bits, order // p) == 1:
                order //= p
            else:
                break
    return order
