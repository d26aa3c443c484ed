"""Exact computation of psi, psi', and the scalar bounds around them.

psi(G) is the sum of the orders of all elements of G; psi'(G) divides it
by psi of the cyclic group of the same order.  Everything here is exact:
integers are unbounded, ratios are ``fractions.Fraction`` (always in
lowest terms, positive denominator), and no comparison ever goes through
floating point.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import divisors, is_prime, prime_factorization, totient
from .kernel import ConcreteGroup

NILPOTENCY_THRESHOLD = Fraction(13, 21)
SOLVABILITY_THRESHOLD = Fraction(211, 1617)
SUPERSOLVABILITY_THRESHOLD = Fraction(31, 77)


def psi(G: ConcreteGroup) -> int:
    """Sum of element orders, by brute force over the table."""
    return int(G.element_orders().sum())


def psi_cyclic(n: int) -> int:
    """psi of the cyclic group of order n, via the prime-power closed form.

    For a prime power p^a the value is (p^(2a+1) + 1)/(p + 1); psi is
    multiplicative over coprime factors, so the general value is the
    product over the prime powers dividing n.
    """
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    out = 1
    for p, a in prime_factorization(n).items():
        out *= (p ** (2 * a + 1) + 1) // (p + 1)
    return out


def psi_cyclic_oracle(n: int) -> int:
    """Independent check value: sum over d | n of d * phi(d).

    A cyclic group of order n has phi(d) elements of order d for each
    divisor d, so this divisor sum equals psi of the cyclic group.  Kept
    as a separate code path for cross-validation only.
    """
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    return sum(d * totient(d) for d in divisors(n))


def psi_prime(G) -> Fraction:
    """psi(G) normalized by the cyclic group of the same order.

    Accepts a realized ConcreteGroup (brute force) or a structured spec
    with a closed form (see :mod:`psi_lab.families`).  The result is
    always at most 1; that bound is asserted, not assumed.
    """
    if isinstance(G, ConcreteGroup):
        value = Fraction(psi(G), psi_cyclic(G.order))
    else:
        from . import families

        value = Fraction(
            families.psi_closed_form(G), psi_cyclic(families.spec_order(G))
        )
    assert value <= 1, f"psi' exceeded 1 on {G!r}"
    return value


def herzog_bound_f(q: int) -> Fraction:
    """The sharp non-cyclic upper bound f(q) = ((q^2-1)q + 1)(q+1) / (q^5+1).

    q must be prime; f is strictly decreasing in q and f(q) < 1/(q-1).
    """
    if not is_prime(q):
        raise ValueError(f"expected a prime, got {q}")
    return Fraction(((q * q - 1) * q + 1) * (q + 1), q**5 + 1)


def cyclic_lower_bound(n: int) -> Fraction:
    """Lower bound q/(p+1) * n^2 for psi of the cyclic group of order n.

    q and p are the smallest and largest prime divisors of n; requires
    n > 1.  psi_cyclic(n) is always at least this value.
    """
    if n <= 1:
        raise ValueError(f"bound requires n > 1, got {n}")
    primes = sorted(prime_factorization(n))
    q, p = primes[0], primes[-1]
    return Fraction(q, p + 1) * n * n


def sylow_ratio(p: int, n: int) -> Fraction:
    """|P| / psi(|P| cyclic) for a cyclic p-group P of order p^n, p odd.

    Equals p^n (p+1) / (p^(2n+1) + 1); it is at most 3/7, with equality
    exactly at p = 3, n = 1.
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"expected an odd prime, got {p}")
    if n < 1:
        raise ValueError(f"expected n >= 1, got {n}")
    return Fraction(p**n * (p + 1), p ** (2 * n + 1) + 1)
