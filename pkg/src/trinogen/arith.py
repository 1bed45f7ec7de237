"""Exact integer and modular arithmetic primitives.

Primality is decided by Miller-Rabin with a fixed witness set, which is
deterministic for every n < 3.317e24 (well past 64 bits).  Between that bound
and 2**128 a strong Lucas test is added (Baillie-PSW); no counterexample to
BPSW is known.  Inputs of 2**128 and above are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

MAX_BITS = 128
TRIAL_LIMIT = 10**6

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# Deterministic bound for the 13 bases above (Sorenson & Webster, 2015).
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


_TRIAL_PRIMES = _small_primes(TRIAL_LIMIT)


def _blocks(primes: list[int], size: int) -> list[tuple[int, list[int], int]]:
    out = []
    for i in range(0, len(primes), size):
        block = primes[i : i + size]
        prod = 1
        for p in block:
            prod *= p
        out.append((block[0], block, prod))
    return out


_TRIAL_BLOCKS = _blocks(_TRIAL_PRIMES, 256)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of a positive integer.

    ``factors`` holds ``(prime, exponent)`` pairs with primes strictly
    increasing.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factor list {self.factors!r}")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors multiply to {prod}, not {self.value}")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0


def _check_width(n: int) -> None:
    if n.bit_length() > MAX_BITS:
        raise ValueError(f"{n} exceeds the {MAX_BITS}-bit arithmetic cap")


def _strong_probable_prime(n: int, a: int) -> bool:
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge method A parameters.
    d = 5
    while True:
        j = jacobi(d, n)
        if j == -1:
            break
        if j == 0 and abs(d) != n:
            return False
        d = -d - 2 if d > 0 else -d + 2
        if d == 13 and is_square(n):
            return False
    p, q = 1, (1 - d) // 4
    k = n + 1
    s = 0
    while k % 2 == 0:
        k //= 2
        s += 1
    inv2 = (n + 1) // 2
    u, v, qk = 1, p, q % n
    for bit in bin(k)[3:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (p * u + v) * inv2 % n, (d * u + p * v) * inv2 % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        if v == 0:
            return True
        qk = qk * qk % n
    return False


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def is_prime(n: int) -> bool:
    """Primality test, deterministic below 3.3e24 and BPSW up to 2**128."""
    if n < 2:
        return False
    _check_width(n)
    for p in _MR_BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < 43 * 43:
        return True
    if not all(_strong_probable_prime(n, a) for a in _MR_BASES):
        return False
    if n < _MR_DETERMINISTIC_BOUND:
        return True
    return _strong_lucas_probable_prime(n)


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite ``n``.

    The polynomial constant is walked 1, 2, 3, ... so the result is
    reproducible.
    """
    c = 0
    while True:
        c += 1
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int]) -> None:
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _pollard_brent(m)
        stack += [d, m // d]


def trial_division(n: int) -> tuple[dict[int, int], int]:
    """Strip prime factors below 10**6 from n >= 1.

    Returns the factors found and the cofactor, which is 1, a prime, or has
    every prime factor above 10**6.
    """
    found: dict[int, int] = {}
    m = n
    check = True
    for first, block, product in _TRIAL_BLOCKS:
        if first * first > m or (check and m.bit_length() <= MAX_BITS and is_prime(m)):
            break
        # one gcd per block of primes instead of one remainder per prime
        check = gcd(m, product) > 1
        if not check:
            continue
        for p in block:
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                found[p] = e
    else:
        return found, m
    if 1 < m:
        found[m] = found.get(m, 0) + 1
        m = 1
    return found, m


def factor(n: int) -> Factorization:
    """Complete prime factorization of ``1 <= n < 2**128``.

    Trial division by primes below 10**6, then Pollard-Brent on the cofactor.
    """
    if n < 1:
        raise ValueError(f"factor() needs n >= 1, got {n}")
    _check_width(n)
    found, m = trial_division(n)
    if m > 1:
        _split(m, found)
    return Factorization(n, tuple(sorted(found.items())))


def is_squarefree(n: int) -> bool:
    if n < 1:
        raise ValueError(f"is_squarefree() needs n >= 1, got {n}")
    return all(e == 1 for _, e in factor(n).factors)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0, by quadratic reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd positive n, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def euler_criterion(a: int, p: int) -> int:
    """Legendre symbol via a^((p-1)/2) mod p."""
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"Legendre symbol needs an odd prime, got {p}")
    return jacobi(a, p)


def mod_pow(base: int, exp: int, m: int) -> int:
    """base**exp mod m by left-to-right square-and-multiply."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if exp < 0:
        raise ValueError("negative exponent")
    base %= m
    result = 1
    for bit in bin(exp)[2:]:
        result = result * result % m
        if bit == "1":
            result = result * base % m
    return result


def divisors_from(f: Factorization) -> list[int]:
    divs = [1]
    for p, e in f.factors:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def valuation(n: int, p: int) -> int:
    """Exponent of p in n (n != 0)."""
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
