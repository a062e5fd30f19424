"""Small number-theoretic helpers used by the group constructors."""

from __future__ import annotations

from .errors import InvalidParameter

__all__ = [
    "is_prime",
    "odd_primes",
    "nth_odd_prime",
    "prime_factorization",
    "p_part",
    "multiplicative_order",
    "is_prime_power",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def odd_primes():
    """Yield 3, 5, 7, 11, ... indefinitely."""
    n = 3
    while True:
        if is_prime(n):
            yield n
        n += 2


_ODD_PRIME_CACHE: list[int] = []


def nth_odd_prime(k: int) -> int:
    """The k-th odd prime, 1-based (nth_odd_prime(1) == 3)."""
    if k < 1:
        raise InvalidParameter(f"odd-prime index must be >= 1, got {k}")
    while len(_ODD_PRIME_CACHE) < k:
        n = _ODD_PRIME_CACHE[-1] + 2 if _ODD_PRIME_CACHE else 3
        while not is_prime(n):
            n += 2
        _ODD_PRIME_CACHE.append(n)
    return _ODD_PRIME_CACHE[k - 1]


def prime_factorization(n: int) -> dict[int, int]:
    """Map each prime divisor of n to its exponent."""
    if n < 1:
        raise InvalidParameter(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


def multiplicative_order(a: int, n: int) -> int:
    """Order of a in (Z/n)*; requires gcd(a, n) == 1."""
    import math

    if n < 2 or math.gcd(a, n) != 1:
        raise InvalidParameter(f"{a} is not a unit mod {n}")
    a %= n
    k, x = 1, a
    while x != 1:
        x = x * a % n
        k += 1
    return k


def is_prime_power(n: int) -> bool:
    """True when n = p^k with p prime and k >= 1."""
    if n < 2:
        return False
    return len(prime_factorization(n)) == 1
