"""Trial-division oracles, deliberately independent of the package code."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def twin_smaller_members(limit: int) -> list[int]:
    """q with q and q+2 prime and q+2 <= limit."""
    return [q for q in range(3, limit - 1) if is_prime(q) and is_prime(q + 2)]


def census_counts(limit: int) -> tuple[int, int, int, int, int]:
    """(pi2, c1, c7, c9, exceptional) by direct enumeration."""
    qs = twin_smaller_members(limit)
    pi2 = len(qs)
    c1 = sum(1 for q in qs if q % 10 == 1)
    c7 = sum(1 for q in qs if q % 10 == 7)
    c9 = sum(1 for q in qs if q % 10 == 9)
    return pi2, c1, c7, c9, pi2 - c1 - c7 - c9


def primes_upto(limit: int) -> list[int]:
    return [p for p in range(2, limit + 1) if is_prime(p)]
