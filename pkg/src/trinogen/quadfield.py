"""The real quadratic field Q(sqrt(D)) attached to x^2 - kx - 1.

The unit epsilon = (k + sqrt(k^2 + 4)) / 2 is never handled numerically.  It
lives in Z[x]/(x^2 - kx - 1) with coefficients reduced mod m, where every
congruence about it can be checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from trinogen.arith import divisors_from, factor, is_prime, is_square, is_squarefree, jacobi
from trinogen.lucas import core_discriminant


class HypothesisError(ValueError):
    """A lemma's hypothesis does not hold; ``condition`` names which one."""

    def __init__(self, condition: str, message: str):
        super().__init__(message)
        self.condition = condition


@dataclass(frozen=True)
class FieldData:
    k: int
    D: int
    fund_disc: int
    class_number: int | None
    squarefree_D: bool
    # k % 4 != 0 and D squarefree: the range where the main theorem applies.
    in_theorem_range: bool


@dataclass(frozen=True)
class QuadInt:
    """a + b*eps in Z[eps]/(m), eps^2 = k*eps + 1."""

    a: int
    b: int
    k: int
    m: int

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError(f"modulus must be >= 2, got {self.m}")
        object.__setattr__(self, "a", self.a % self.m)
        object.__setattr__(self, "b", self.b % self.m)

    @classmethod
    def epsilon(cls, k: int, m: int) -> QuadInt:
        return cls(0, 1, k, m)

    @classmethod
    def one(cls, k: int, m: int) -> QuadInt:
        return cls(1, 0, k, m)

    def _check(self, other: QuadInt) -> None:
        if (self.k, self.m) != (other.k, other.m):
            raise ValueError(f"ring mismatch: (k, m) = {(self.k, self.m)} vs {(other.k, other.m)}")

    def _coerce(self, other: QuadInt | int) -> QuadInt:
        if isinstance(other, int):
            return QuadInt(other, 0, self.k, self.m)
        self._check(other)
        return other

    def __add__(self, other: QuadInt | int) -> QuadInt:
        other = self._coerce(other)
        return QuadInt(self.a + other.a, self.b + other.b, self.k, self.m)

    __radd__ = __add__

    def __neg__(self) -> QuadInt:
        return QuadInt(-self.a, -self.b, self.k, self.m)

    def __sub__(self, other: QuadInt | int) -> QuadInt:
        return self + (-self._coerce(other))

    def __mul__(self, other: QuadInt | int) -> QuadInt:
        if isinstance(other, int):
            return QuadInt(self.a * other, self.b * other, self.k, self.m)
        return quad_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> QuadInt:
        return quad_pow(self, e)

    def conjugate(self) -> QuadInt:
        # eps + conj(eps) = k
        return QuadInt(self.a + self.b * self.k, -self.b, self.k, self.m)

    def norm(self) -> QuadInt:
        return self * self.conjugate()

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0


def quad_mul(x: QuadInt, y: QuadInt) -> QuadInt:
    x._check(y)
    bb = x.b * y.b
    return QuadInt(x.a * y.a + bb, x.a * y.b + y.a * x.b + x.k * bb, x.k, x.m)


def quad_pow(x: QuadInt, e: int) -> QuadInt:
    if e < 0:
        raise ValueError("negative exponent")
    result = QuadInt.one(x.k, x.m)
    for bit in bin(e)[2:]:
        result = quad_mul(result, result)
        if bit == "1":
            result = quad_mul(result, x)
    return result


def _squarefree_kernel(n: int) -> int:
    out = 1
    for p, e in factor(n).factors:
        if e % 2:
            out *= p
    return out


def is_fundamental_discriminant(d: int) -> bool:
    if d <= 1 or is_square(d):
        return False
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        n = d // 4
        return n % 4 in (2, 3) and is_squarefree(n)
    return False


def _reduced_forms(d: int) -> list[tuple[int, int, int]]:
    # (a, b, c), b^2 - 4ac = d, 0 < b < sqrt d, sqrt d - b < 2|a| < sqrt d + b
    forms = []
    for b in range(d % 2 or 2, isqrt(d) + 1, 2):
        n = (d - b * b) // 4
        for a0 in divisors_from(factor(n)):
            lo, hi = 2 * a0 + b, 2 * a0 - b
            if lo * lo > d and (hi < 0 or hi * hi < d):
                for a in (a0, -a0):
                    forms.append((a, b, -n // a))
    return forms


def _rho(form: tuple[int, int, int], d: int) -> tuple[int, int, int]:
    _, b, c = form
    r = isqrt(d)
    two_c = 2 * abs(c)
    b2 = r - (r + b) % two_c
    return c, b2, (b2 * b2 - d) // (4 * c)


def form_cycles(d: int) -> list[list[tuple[int, int, int]]]:
    """Reduced forms of discriminant d grouped into rho-cycles."""
    remaining = set(_reduced_forms(d))
    cycles = []
    while remaining:
        start = min(remaining)
        cycle = [start]
        cur = _rho(start, d)
        while cur != start:
            cycle.append(cur)
            cur = _rho(cur, d)
        remaining.difference_update(cycle)
        cycles.append(cycle)
    return cycles


def narrow_class_number(fund_disc: int) -> int:
    if not is_fundamental_discriminant(fund_disc):
        raise ValueError(f"{fund_disc} is not a positive fundamental discriminant")
    return len(form_cycles(fund_disc))


@lru_cache(maxsize=None)
def class_number_real(fund_disc: int) -> int:
    """Class number of the real quadratic field of discriminant ``fund_disc``.

    Proper equivalence classes of forms are the rho-cycles of reduced forms,
    which count the narrow class group.  Identifying (a, b, c) with
    (-a, b, -c) collapses it to the wide class group.  The two counts agree
    exactly when the fundamental unit has norm -1, which is the case for
    every field coming from x^2 - kx - 1.
    """
    if not is_fundamental_discriminant(fund_disc):
        raise ValueError(f"{fund_disc} is not a positive fundamental discriminant")
    cycles = form_cycles(fund_disc)
    where = {f: i for i, cyc in enumerate(cycles) for f in cyc}
    classes = {frozenset((i, where[(-a, b, -c)])) for i, cyc in enumerate(cycles) for a, b, c in cyc[:1]}
    return len(classes)


def field_data(k: int) -> FieldData:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if k == 4:
        raise ValueError("k = 4 is excluded (D would not match the unit's field)")
    d_val = core_discriminant(k)
    sqf = is_squarefree(d_val)
    kernel = _squarefree_kernel(d_val)
    fund = kernel if kernel % 4 == 1 else 4 * kernel
    h = class_number_real(fund) if sqf else None
    return FieldData(k, d_val, fund, h, sqf, sqf and k % 4 != 0)


def residual_degree(k: int, p: int) -> int:
    """Residue degree of an odd prime p in Q(sqrt(D)): 2 if inert, else 1."""
    return 2 if jacobi(core_discriminant(k), p) == -1 else 1


def _require_inert_odd_prime(k: int, p: int) -> None:
    if p < 3 or not is_prime(p):
        raise HypothesisError("p_odd_prime", f"{p} is not an odd prime")
    if jacobi(core_discriminant(k), p) != -1:
        raise HypothesisError("delta", f"D = {core_discriminant(k)} is not a non-residue mod {p}")


def unit_order(k: int, m: int) -> int:
    """Multiplicative order of epsilon modulo m, for m = p or p^2 with p inert."""
    r = isqrt(m)
    p = r if r * r == m else m
    _require_inert_odd_prime(k, p)
    ord_p = _order_dividing(k, p, 2 * (p + 1))
    if m == p:
        return ord_p
    # ord mod p^2 is a multiple of ord mod p dividing p * ord mod p
    one = QuadInt.one(k, m)
    return ord_p if quad_pow(QuadInt.epsilon(k, m), ord_p) == one else p * ord_p


def _order_dividing(k: int, m: int, bound: int) -> int:
    eps, one = QuadInt.epsilon(k, m), QuadInt.one(k, m)
    for t in divisors_from(factor(bound)):
        if quad_pow(eps, t) == one:
            return t
    raise ArithmeticError(f"order of epsilon mod {m} does not divide {bound}")


def main1_value(k: int, p: int, m_exp: int, conjugate: bool = False) -> QuadInt:
    """u^(2p^m) - k u^(p^m) - 1 mod p^2 for u = epsilon (or its conjugate).

    The exponent p^m_exp is reduced modulo the order of u mod p^2, so m_exp
    may be arbitrarily large.
    """
    m = p * p
    order = unit_order(k, m)
    e = pow(p, m_exp, order)
    u = QuadInt.epsilon(k, m)
    if conjugate:
        u = u.conjugate()
    x = quad_pow(u, e)
    return x * x - x * k - 1


def main1_congruence(k: int, p: int, m_exp: int) -> bool:
    """Whether eps^(2p^m) - k eps^(p^m) - 1 == 0 mod p^2.

    Raises HypothesisError naming the first violated hypothesis: p an odd
    prime, D squarefree, p not dividing k, gcd(p, hD) = 1, D a non-residue.
    """
    if m_exp < 1:
        raise ValueError(f"m_exp must be >= 1, got {m_exp}")
    if p < 3 or not is_prime(p):
        raise HypothesisError("p_odd_prime", f"{p} is not an odd prime")
    fd = field_data(k)
    if not fd.squarefree_D:
        raise HypothesisError("D_squarefree", f"D = {fd.D} is not squarefree")
    if k % p == 0:
        raise HypothesisError("p_divides_k", f"{p} divides k = {k}")
    if gcd(p, fd.class_number * fd.D) != 1:
        raise HypothesisError("gcd_p_hD", f"{p} divides h*D = {fd.class_number * fd.D}")
    if jacobi(fd.D, p) != -1:
        raise HypothesisError("delta", f"D = {fd.D} is not a non-residue mod {p}")
    return main1_value(k, p, m_exp).is_zero()
