"""Pure-Python hot kernels; the fallback for ``_kernels.pyx``.

Both modules expose the same functions with the same semantics.  The
compiled one restricts moduli to below 2**63; callers route larger moduli
here.
"""

from math import isqrt


def lucas_pair_mod(k, n, m):
    """(U_n mod m, U_{n+1} mod m) for U_n(k, -1), by fast doubling."""
    k %= m
    u0, u1 = 0, 1 % m
    for bit in bin(n)[2:] if n else ():
        # U_2j = U_j (2 U_{j+1} - k U_j),  U_{2j+1} = U_{j+1}^2 + U_j^2
        u0, u1 = u0 * (2 * u1 - k * u0) % m, (u1 * u1 + u0 * u0) % m
        if bit == "1":
            u0, u1 = u1, (k * u1 + u0) % m
    return u0, u1


def period_iter(k, m, limit):
    """Least t <= limit with (U_t, U_{t+1}) == (0, 1) mod m, else 0."""
    k %= m
    a, b = 0, 1 % m
    one = 1 % m
    for t in range(1, limit + 1):
        a, b = b, (k * b + a) % m
        if a == 0 and b == one:
            return t
    return 0


def _base_primes(limit):
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i in range(3, limit + 1, 2) if sieve[i]]


def _jacobi(a, n):
    a %= n
    result = 1
    while a:
        while not a & 1:
            a >>= 1
            if n & 7 in (3, 5):
                result = -result
        a, n = n, a
        if a & 3 == 3 and n & 3 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def odd_primes_in(lo, hi):
    """Odd primes in [lo, hi] by a segmented sieve."""
    lo = max(lo, 3)
    if hi < lo:
        return []
    size = hi - lo + 1
    seg = bytearray([1]) * size
    for q in _base_primes(isqrt(hi)):
        start = max(q * q, (lo + q - 1) // q * q)
        if start > hi:
            continue
        seg[start - lo :: q] = bytearray(len(range(start - lo, size, q)))
    first = lo if lo % 2 else lo + 1
    return [p for p in range(first, hi + 1, 2) if seg[p - lo]]


def wss_chunk(k, disc, lo, hi):
    """Odd primes p in [lo, hi] with p not dividing ``disc`` and
    U_{p - (disc/p)} == 0 mod p^2."""
    hits = []
    for p in odd_primes_in(lo, hi):
        delta = _jacobi(disc, p)
        if delta == 0:
            continue
        if lucas_pair_mod(k, p - delta, p * p)[0] == 0:
            hits.append(p)
    return hits
