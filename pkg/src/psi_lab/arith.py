"""Elementary number-theoretic helpers (trial-division scale).

Inputs throughout the package are tiny (orders of realizable groups and
parameter sweeps below 10^6), so everything here is plain trial division
and exact integer arithmetic.
"""

from __future__ import annotations


def is_prime(n: int) -> bool:
    """Trial-division primality test, adequate for n < 10^12 at our scales."""
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


def prime_factorization(n: int) -> dict[int, int]:
    """Return {p: a} with n = prod p^a.  Requires n >= 1."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
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


def prime_divisors(n: int) -> list[int]:
    return sorted(prime_factorization(n))


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    fac = prime_factorization(n)
    divs = [1]
    for p, a in fac.items():
        divs = [d * p**k for d in divs for k in range(a + 1)]
    return sorted(divs)


def totient(n: int) -> int:
    """Euler's phi via the factorization of n."""
    out = n
    for p in prime_factorization(n):
        out = out // p * (p - 1)
    return out


def is_prime_power(n: int) -> bool:
    """True iff n = p^a with a >= 1."""
    return len(prime_factorization(n)) == 1 if n > 1 else False


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


def first_primes(count: int) -> list[int]:
    out: list[int] = []
    candidate = 2
    while len(out) < count:
        if is_prime(candidate):
            out.append(candidate)
        candidate += 1
    return out


def partitions(n: int) -> list[tuple[int, ...]]:
    """All partitions of n as non-increasing tuples, in reverse-lex order."""
    if n == 0:
        return [()]
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, largest: int, prefix: tuple[int, ...]) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(min(remaining, largest), 0, -1):
            rec(remaining - part, part, prefix + (part,))

    rec(n, n, ())
    return out
