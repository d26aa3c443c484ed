from psi_lab.arith import (
    divisors,
    first_primes,
    is_prime,
    is_prime_power,
    p_part,
    partitions,
    prime_divisors,
    prime_factorization,
    totient,
)

import pytest


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(50):
        assert is_prime(n) == (n in primes)


def test_prime_factorization():
    assert prime_factorization(1) == {}
    assert prime_factorization(12) == {2: 2, 3: 1}
    assert prime_factorization(97) == {97: 1}
    assert prime_factorization(1024) == {2: 10}
    with pytest.raises(ValueError):
        prime_factorization(0)


def test_divisors_and_totient():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]
    assert totient(1) == 1
    assert totient(12) == 4
    assert totient(97) == 96
    # Gauss: sum of phi over divisors is n
    for n in (1, 6, 12, 30, 64, 97):
        assert sum(totient(d) for d in divisors(n)) == n


def test_prime_power_and_parts():
    assert is_prime_power(8)
    assert is_prime_power(27)
    assert not is_prime_power(1)
    assert not is_prime_power(12)
    assert p_part(48, 2) == 16
    assert p_part(48, 3) == 3
    assert prime_divisors(60) == [2, 3, 5]


def test_first_primes():
    assert first_primes(5) == [2, 3, 5, 7, 11]
    assert len(first_primes(20)) == 20


def test_partitions():
    assert partitions(0) == [()]
    assert partitions(1) == [(1,)]
    assert sorted(partitions(4)) == sorted(
        [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    )
    assert len(partitions(7)) == 15
