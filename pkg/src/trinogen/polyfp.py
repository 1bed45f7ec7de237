"""Dense polynomials over Z and F_p.

Coefficient lists are stored constant term first.  Everything is exact:
integer coefficients are Python ints, and residues live in [0, p).
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from functools import cached_property
from math import gcd

from trinogen.arith import is_prime

DEFAULT_DEGREE_CAP = 4096
RESULTANT_DEGREE_CAP = 64
# Seed for equal-degree splitting; factorizations are reproducible run to run.
EDF_SEED = 20240601


def degree_cap() -> int:
    return int(os.environ.get("TRINOGEN_DEGREE_CAP", DEFAULT_DEGREE_CAP))


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(_trim(list(self.coeffs))))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def derivative(self) -> IntPoly:
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def __mul__(self, other: IntPoly) -> IntPoly:
        return IntPoly(tuple(_mul_z(list(self.coeffs), list(other.coeffs))))

    def __sub__(self, other: IntPoly) -> IntPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] -= c
        return IntPoly(tuple(a))

    def mod(self, p: int) -> PolyFp:
        return PolyFp(p, tuple(c % p for c in self.coeffs))

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def _mul_z(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@dataclass(frozen=True)
class Trinomial:
    """x^N + A x^M + B with 0 < M < N."""

    N: int
    M: int
    A: int
    B: int

    def __post_init__(self) -> None:
        if not 0 < self.M < self.N:
            raise ValueError(f"need 0 < M < N, got N={self.N}, M={self.M}")

    @classmethod
    def family(cls, k: int, s: int, n: int) -> Trinomial:
        """x^(2 s^n) - k x^(s^n) - 1."""
        e = s**n
        return cls(2 * e, e, -k, -1)

    @property
    def r(self) -> int:
        return gcd(self.N, self.M)

    @property
    def N1(self) -> int:
        return self.N // self.r

    @property
    def M1(self) -> int:
        return self.M // self.r

    @cached_property
    def D_swan(self) -> int:
        N, M, A, B, N1, M1 = self.N, self.M, self.A, self.B, self.N1, self.M1
        return N**N1 * B ** (N1 - M1) - (-1) ** N1 * M**M1 * (N - M) ** (N1 - M1) * A**N1

    def to_intpoly(self) -> IntPoly:
        c = [0] * (self.N + 1)
        c[0] = self.B
        c[self.M] += self.A
        c[self.N] = 1
        return IntPoly(tuple(c))

    def __str__(self) -> str:
        mid = "x" if self.M == 1 else f"x^{self.M}"
        out = f"x^{self.N}"
        if self.A:
            coef = "" if abs(self.A) == 1 else str(abs(self.A))
            out += f" {'+' if self.A > 0 else '-'} {coef}{mid}"
        if self.B:
            out += f" {'+' if self.B > 0 else '-'} {abs(self.B)}"
        return out


def swan_discriminant(t: Trinomial) -> int:
    """Discriminant of x^N + A x^M + B by Swan's closed form."""
    sign = -1 if (t.N * (t.N - 1) // 2) % 2 else 1
    return sign * t.B ** (t.M - 1) * t.D_swan**t.r


def _bareiss_det(mat: list[list[int]]) -> int:
    n = len(mat)
    a = [row[:] for row in mat]
    sign, prev = 1, 1
    for i in range(n - 1):
        if a[i][i] == 0:
            for r in range(i + 1, n):
                if a[r][i]:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[i][i]
        for r in range(i + 1, n):
            ari = a[r][i]
            row_r, row_i = a[r], a[i]
            for c in range(i + 1, n):
                row_r[c] = (row_r[c] * piv - ari * row_i[c]) // prev
        prev = piv
    return sign * a[n - 1][n - 1]


def sylvester_matrix(f: IntPoly, g: IntPoly) -> list[list[int]]:
    n, m = f.degree, g.degree
    fh, gh = list(reversed(f.coeffs)), list(reversed(g.coeffs))
    size = n + m
    rows = [[0] * i + fh + [0] * (size - n - 1 - i) for i in range(m)]
    rows += [[0] * i + gh + [0] * (size - m - 1 - i) for i in range(n)]
    return rows


def resultant(f: IntPoly, g: IntPoly) -> int:
    return _bareiss_det(sylvester_matrix(f, g))


def discriminant_resultant(f: IntPoly) -> int:
    """(-1)^(n(n-1)/2) Res(f, f') / lc(f), via the Sylvester determinant."""
    n = f.degree
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    if n > RESULTANT_DEGREE_CAP:
        raise ValueError(f"degree {n} exceeds the resultant oracle cap {RESULTANT_DEGREE_CAP}")
    res = resultant(f, f.derivative())
    q, rem = divmod(res, f.lc)
    assert rem == 0
    return -q if (n * (n - 1) // 2) % 2 else q


# ---------------------------------------------------------------- F_p[x]


@dataclass(frozen=True)
class PolyFp:
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(_trim([c % self.p for c in self.coeffs])))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def lift(self) -> IntPoly:
        return IntPoly(self.coeffs)

    def __mul__(self, other: PolyFp) -> PolyFp:
        _same_field(self, other)
        return PolyFp(self.p, tuple(_mul(list(self.coeffs), list(other.coeffs), self.p)))

    def __pow__(self, e: int) -> PolyFp:
        out = PolyFp(self.p, (1,))
        for _ in range(e):
            out = out * self
        return out

    def __str__(self) -> str:
        terms = [f"{c}*x^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return " + ".join(reversed(terms)) or "0"


def _same_field(a: PolyFp, b: PolyFp) -> None:
    if a.p != b.p:
        raise ValueError(f"moduli differ: {a.p} vs {b.p}")


def _mul(a: list[int], b: list[int], p: int) -> list[int]:
    return _trim([c % p for c in _mul_z(a, b)])


def _add(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = a[:]
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(a) - 1 < db:
        return [], a
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c = a[i + db] * inv % p
        q[i] = c
        if c:
            for j in range(db + 1):
                a[i + j] = (a[i + j] - c * b[j]) % p
    return _trim(q), _trim(a[:db])


def _rem(a: list[int], b: list[int], p: int) -> list[int]:
    return _divmod(a, b, p)[1]


def _monic(a: list[int], p: int) -> list[int]:
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _rem(a, b, p)
    return _monic(a, p)


def _powmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _rem(base, mod, p)
    for bit in bin(e)[2:]:
        result = _rem(_mul(result, result, p), mod, p)
        if bit == "1":
            result = _rem(_mul(result, base, p), mod, p)
    return result


def _deriv(a: list[int], p: int) -> list[int]:
    return _trim([i * c % p for i, c in enumerate(a)][1:])


def poly_gcd_fp(a: PolyFp, b: PolyFp) -> PolyFp:
    """Monic gcd by Euclid's algorithm."""
    _same_field(a, b)
    return PolyFp(a.p, tuple(_gcd(list(a.coeffs), list(b.coeffs), a.p)))


def poly_divmod_fp(a: PolyFp, b: PolyFp) -> tuple[PolyFp, PolyFp]:
    _same_field(a, b)
    q, r = _divmod(list(a.coeffs), list(b.coeffs), a.p)
    return PolyFp(a.p, tuple(q)), PolyFp(a.p, tuple(r))


def _squarefree_parts(f: list[int], p: int) -> list[tuple[list[int], int]]:
    out: list[tuple[list[int], int]] = []
    i = 1
    c = _gcd(f, _deriv(f, p), p)
    w = _divmod(f, c, p)[0]
    while len(w) > 1:
        y = _gcd(w, c, p)
        z = _divmod(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = _divmod(c, y, p)[0]
    if len(c) > 1:
        # c is a polynomial in x^p; over F_p its p-th root just drops exponents
        root = c[::p]
        out += [(g, e * p) for g, e in _squarefree_parts(root, p)]
    return out


def _distinct_degree(f: list[int], p: int) -> list[tuple[list[int], int]]:
    out = []
    x = [0, 1]
    h = x
    d = 0
    while 2 * (d + 1) <= len(f) - 1:
        d += 1
        h = _powmod(h, p, f, p)
        g = _gcd(f, _sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, d))
            f = _divmod(f, g, p)[0]
            h = _rem(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _equal_degree(f: list[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = _trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t, cur = a, a
            for _ in range(d - 1):
                cur = _rem(_mul(cur, cur, p), f, p)
                t = _add(t, cur, p)
            b = t
        else:
            b = _sub(_powmod(a, (p**d - 1) // 2, f, p), [1], p)
        g = _gcd(f, b, p)
        if 1 < len(g) < len(f):
            return _equal_degree(g, d, p, rng) + _equal_degree(_divmod(f, g, p)[0], d, p, rng)


def factor_mod_p(f: PolyFp, seed: int = EDF_SEED) -> list[tuple[PolyFp, int]]:
    """Factor a monic f into monic irreducibles over F_p.

    Squarefree decomposition, distinct-degree, then Cantor-Zassenhaus
    equal-degree splitting driven by ``random.Random(seed)``.  Factors are
    returned sorted by (degree, coefficients).
    """
    p = f.p
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not f.coeffs or f.coeffs[-1] != 1:
        raise ValueError("factor_mod_p needs a monic polynomial")
    if f.degree == 0:
        return []
    rng = random.Random(seed)
    found: dict[tuple[int, ...], int] = {}
    for part, mult in _squarefree_parts(list(f.coeffs), p):
        for block, d in _distinct_degree(part, p):
            for g in _equal_degree(block, d, p, rng):
                key = tuple(g)
                found[key] = found.get(key, 0) + mult
    ordered = sorted(found.items(), key=lambda kv: (len(kv[0]), kv[0][::-1]))
    return [(PolyFp(p, key), e) for key, e in ordered]


def is_irreducible_mod_p(f: PolyFp) -> bool:
    """Rabin-style test: no factor of degree d <= n/2 divides f."""
    p, fl = f.p, _monic(list(f.coeffs), f.p)
    n = len(fl) - 1
    if n < 1:
        return False
    x = [0, 1]
    h = x
    for _ in range(n // 2):
        h = _powmod(h, p, fl, p)
        if len(_gcd(fl, _sub(h, x, p), p)) > 1:
            return False
    return True
