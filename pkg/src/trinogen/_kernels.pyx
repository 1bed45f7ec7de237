# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels.  Mirrors ``_kernels_py`` function for function.

Moduli must be below 2**63 so that residues and their sums fit in 64 bits;
products go through unsigned __int128.
"""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memset

cdef extern from *:
    """
    typedef unsigned __int128 trinogen_u128;
    static inline unsigned long long trinogen_mulmod(unsigned long long a,
                                                     unsigned long long b,
                                                     unsigned long long m) {
        return (unsigned long long)(((trinogen_u128)a * b) % m);
    }
    """
    unsigned long long trinogen_mulmod(unsigned long long a, unsigned long long b,
                                       unsigned long long m) nogil

MAX_MOD = 2**63


cdef inline void _pair(uint64_t k, uint64_t n, uint64_t m,
                       uint64_t *out0, uint64_t *out1) nogil:
    cdef uint64_t u0 = 0, u1 = 1 % m, t, s
    cdef int bit = 63
    while bit >= 0 and not ((n >> bit) & 1):
        bit -= 1
    while bit >= 0:
        # U_2j = U_j (2 U_{j+1} - k U_j)
        t = (2 * u1) % m
        s = trinogen_mulmod(k, u0, m)
        t = (t + m - s) % m
        s = trinogen_mulmod(u0, t, m)
        # U_{2j+1} = U_{j+1}^2 + U_j^2
        u1 = (trinogen_mulmod(u1, u1, m) + trinogen_mulmod(u0, u0, m)) % m
        u0 = s
        if (n >> bit) & 1:
            t = (trinogen_mulmod(k, u1, m) + u0) % m
            u0 = u1
            u1 = t
        bit -= 1
    out0[0] = u0
    out1[0] = u1


def lucas_pair_mod(k, n, m):
    """(U_n mod m, U_{n+1} mod m); needs 2 <= m < 2**63 and 0 <= n < 2**64."""
    if not 2 <= m < MAX_MOD:
        raise OverflowError("modulus outside compiled range")
    cdef uint64_t a, b
    _pair(<uint64_t>(k % m), <uint64_t>n, <uint64_t>m, &a, &b)
    return int(a), int(b)


def period_iter(k, m, limit):
    """Least t <= limit with (U_t, U_{t+1}) == (0, 1) mod m, else 0."""
    if not 2 <= m < MAX_MOD:
        raise OverflowError("modulus outside compiled range")
    cdef uint64_t mm = m, kk = k % m, a = 0, b = 1, c
    cdef uint64_t t, lim = limit, found = 0
    with nogil:
        for t in range(1, lim + 1):
            c = (trinogen_mulmod(kk, b, mm) + a) % mm
            a = b
            b = c
            if a == 0 and b == 1:
                found = t
                break
    return int(found)


cdef int _jacobi(uint64_t a, uint64_t n) nogil:
    cdef int result = 1
    cdef uint64_t tmp
    a %= n
    while a:
        while not (a & 1):
            a >>= 1
            if (n & 7) == 3 or (n & 7) == 5:
                result = -result
        tmp = a
        a = n
        n = tmp
        if (a & 3) == 3 and (n & 3) == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


cdef uint64_t _isqrt(uint64_t n) nogil:
    cdef uint64_t r = <uint64_t>(<double>n ** 0.5)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


def odd_primes_in(lo, hi):
    """Odd primes in [lo, hi] by a segmented sieve."""
    cdef uint64_t L = max(lo, 3), H = hi
    if H < L:
        return []
    cdef uint64_t root = _isqrt(H)
    cdef uint64_t size = H - L + 1
    cdef unsigned char *base = <unsigned char *>malloc(root + 1)
    cdef unsigned char *seg = <unsigned char *>malloc(size)
    cdef uint64_t i, j, q, start
    out = []
    try:
        memset(base, 1, root + 1)
        memset(seg, 1, size)
        with nogil:
            i = 2
            while i * i <= root:
                if base[i]:
                    j = i * i
                    while j <= root:
                        base[j] = 0
                        j += i
                i += 1
            q = 3
            while q <= root:
                if base[q]:
                    start = (L + q - 1) // q * q
                    if start < q * q:
                        start = q * q
                    j = start
                    while j <= H:
                        seg[j - L] = 0
                        j += q
                q += 2
        i = L if L & 1 else L + 1
        while i <= H:
            if seg[i - L]:
                out.append(int(i))
            i += 2
    finally:
        free(base)
        free(seg)
    return out


def wss_chunk(k, disc, lo, hi):
    """Odd primes p in [lo, hi] with p not dividing ``disc`` and
    U_{p - (disc/p)} == 0 mod p^2.  Needs hi**2 < 2**63."""
    if hi * hi >= MAX_MOD or not 0 <= k < MAX_MOD:
        raise OverflowError("p^2 or k outside compiled range")
    cdef uint64_t p, m, a, b, kk = k, dd
    cdef int delta
    hits = []
    for p_obj in odd_primes_in(lo, hi):
        p = p_obj
        dd = disc % p_obj
        delta = _jacobi(dd, p)
        if delta == 0:
            continue
        m = p * p
        _pair(kk % m, p + 1 if delta < 0 else p - 1, m, &a, &b)
        if a == 0:
            hits.append(p_obj)
    return hits
