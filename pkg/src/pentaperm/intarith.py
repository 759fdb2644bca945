"""Small integer number theory shared by the field and theory modules."""

from __future__ import annotations

__all__ = ["factorize", "prime_factors", "multiplicative_order"]


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; adequate for the 2^n - 1 sizes used here."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime divisors of n, ascending."""
    return tuple(sorted(factorize(n))) if n > 1 else ()


def multiplicative_order(a: int, modulus: int) -> int:
    """Least k > 0 with a^k = 1 (mod modulus); requires gcd(a, modulus) = 1."""
    import math

    if modulus <= 1:
        raise ValueError("modulus must exceed 1")
    if math.gcd(a, modulus) != 1:
        raise ValueError("base and modulus must be coprime")
    k, v = 1, a % modulus
    while v != 1:
        v = v * a % modulus
        k += 1
    return k
