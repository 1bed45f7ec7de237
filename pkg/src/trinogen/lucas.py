"""Lucas sequences U_n(k, -1), their periods, and k-Wall-Sun-Sun primes.

U_0 = 0, U_1 = 1, U_n = k U_{n-1} + U_{n-2}.  A prime p is k-Wall-Sun-Sun
(k-WSS) when U_{pi} == 0 mod p^2, pi being the period of U mod p.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import isqrt

from trinogen import _backend
from trinogen.arith import divisors_from, factor, is_prime, jacobi

# Largest prime p for which period(k, p) / period(k, p^2) are supported.
MAX_PERIOD_PRIME = 2**62
# Moduli of no special shape are handled by stepwise iteration up to this bound.
MAX_ITERATED_MODULUS = 10**6
# Primes dividing the discriminant are handled by iteration (period 4p) up to this bound.
MAX_RAMIFIED_PRIME = 10**7
MAX_SIEVE_PRIME = 10**9
SIEVE_CHUNK = 1 << 18


@dataclass(frozen=True)
class LucasParams:
    k: int

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")


@dataclass(frozen=True)
class PeriodRecord:
    k: int
    m: int
    pi: int


class WssMethod(str, enum.Enum):
    DEFINITION = "definition"
    SHIFTED_INDEX = "shifted_index"
    UNIT_CONGRUENCE = "unit_congruence"


@dataclass(frozen=True)
class WssVerdict:
    k: int
    p: int
    delta: int
    pi_p: int
    pi_p2: int
    # U_{p-delta} mod p^2; U_{pi(p)} mod p^2 when p = 2 or p divides D
    u_residue: int
    is_wss: bool
    method: WssMethod


def _as_params(params: LucasParams | int) -> LucasParams:
    return params if isinstance(params, LucasParams) else LucasParams(params)


def core_discriminant(k: int) -> int:
    """k^2 + 4 for odd k, (k/2)^2 + 1 for even k.

    Defined here for every k >= 1; the field-level API rejects k = 4.
    """
    return k * k + 4 if k % 2 else (k // 2) ** 2 + 1


def lucas_pair_mod(params: LucasParams | int, n: int, m: int) -> tuple[int, int]:
    """(U_n mod m, U_{n+1} mod m) in O(log n) multiplications."""
    k = _as_params(params).k
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if n < 0:
        raise ValueError(f"index must be nonnegative, got {n}")
    return _backend.lucas_pair_mod(k, n, m)


def lucas_u(params: LucasParams | int, n: int) -> int:
    """Exact U_n (unbounded integer); for tests and small n."""
    k = _as_params(params).k
    a, b = 0, 1
    for _ in range(n):
        a, b = b, k * b + a
    return a


def _period_mod2(k: int) -> int:
    return 2 if k % 2 == 0 else 3


def _period_mod4(k: int) -> int:
    # Row k == 3 is printed as "k == 3 (mod 2)" in the source table; it is mod 4.
    return {0: 2, 1: 6, 2: 4, 3: 6}[k % 4]


def _order_from_bound(k: int, m: int, bound: int) -> int:
    for t in divisors_from(factor(bound)):
        if _backend.lucas_pair_mod(k, t, m) == (0, 1):
            return t
    raise ArithmeticError(f"no period of U_n({k},-1) mod {m} divides {bound}")


def _prime_period(k: int, p: int) -> int:
    if p == 2:
        return _period_mod2(k)
    delta = jacobi(k * k + 4, p)
    if delta == 1:
        return _order_from_bound(k, p, p - 1)
    if delta == -1:
        return _order_from_bound(k, p, 2 * (p + 1))
    if p > MAX_RAMIFIED_PRIME:
        raise ValueError(f"prime {p} divides k^2+4 and exceeds the iteration cap {MAX_RAMIFIED_PRIME}")
    t = _backend.period_iter(k, p, 4 * p)
    if t == 0:
        raise ArithmeticError(f"period of U_n({k},-1) mod {p} exceeds 4p")
    return t


def _prime_square_period(k: int, p: int) -> int:
    if p == 2:
        return _period_mod4(k)
    pi = _prime_period(k, p)
    return pi if _backend.lucas_pair_mod(k, pi, p * p) == (0, 1) else p * pi


def period(params: LucasParams | int, m: int) -> PeriodRecord:
    """Period of U_n(k, -1) modulo m.

    Supported moduli: 2, 4, primes p < 2**62, squares p^2 of such primes,
    and any m <= 10**6 (stepwise iteration).
    """
    k = _as_params(params).k
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if m == 2:
        return PeriodRecord(k, m, _period_mod2(k))
    if m == 4:
        return PeriodRecord(k, m, _period_mod4(k))
    if m < MAX_PERIOD_PRIME and is_prime(m):
        return PeriodRecord(k, m, _prime_period(k, m))
    root = isqrt(m)
    if root * root == m and root < MAX_PERIOD_PRIME and is_prime(root):
        return PeriodRecord(k, m, _prime_square_period(k, root))
    if m <= MAX_ITERATED_MODULUS:
        t = _backend.period_iter(k, m, 6 * m)
        if t == 0:
            raise ArithmeticError(f"period of U_n({k},-1) mod {m} exceeds 6m")
        return PeriodRecord(k, m, t)
    raise ValueError(f"unsupported modulus {m}: not 2, 4, p, p^2 (p < 2**62) or <= {MAX_ITERATED_MODULUS}")


def _unit_congruence(k: int, p: int, delta: int) -> bool:
    # epsilon^(p^r - 1) == 1 mod p^2, r the residual degree of p
    from trinogen.quadfield import QuadInt, quad_pow

    r = 2 if delta == -1 else 1
    eps = QuadInt.epsilon(k, p * p)
    return quad_pow(eps, p**r - 1) == QuadInt.one(k, p * p)


def wss_test(
    params: LucasParams | int, p: int, method: WssMethod | str | None = None
) -> WssVerdict:
    """Decide whether p is a k-Wall-Sun-Sun prime.

    With ``method=None`` the criterion is picked by p: closed forms for p = 2,
    the definition when p divides the discriminant, otherwise U_{p-delta}
    mod p^2.  ``unit_congruence`` tests epsilon^(p^r-1) == 1 mod p^2 and is
    only meaningful when p is coprime to h * D.
    """
    k = _as_params(params).k
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p >= MAX_PERIOD_PRIME:
        raise ValueError(f"{p} exceeds the prime cap {MAX_PERIOD_PRIME}")
    method = WssMethod(method) if method is not None else None
    pi_p = _prime_period(k, p)
    pi_p2 = _prime_square_period(k, p)

    if p == 2:
        if method not in (None, WssMethod.DEFINITION):
            raise ValueError(f"method {method.value} does not apply to p = 2")
        # U_2 = k when k is even, U_3 = k^2 + 1 == 2 mod 4 when k is odd
        residue = k % 4 if k % 2 == 0 else (k * k + 1) % 4
        return WssVerdict(k, p, 0, pi_p, pi_p2, residue, k % 4 == 0, WssMethod.DEFINITION)

    delta = jacobi(core_discriminant(k), p)
    if delta == 0 and method not in (None, WssMethod.DEFINITION):
        raise ValueError(f"method {method.value} needs p not dividing the discriminant")
    # U_{p-delta} mod p^2, or U_{pi(p)} mod p^2 when there is no shifted index
    residue = lucas_pair_mod(k, pi_p if delta == 0 else p - delta, p * p)[0]

    if method is None:
        method = WssMethod.DEFINITION if delta == 0 else WssMethod.SHIFTED_INDEX
    if method is WssMethod.DEFINITION:
        is_wss = lucas_pair_mod(k, pi_p, p * p)[0] == 0
    elif method is WssMethod.SHIFTED_INDEX:
        is_wss = residue == 0
    else:
        is_wss = _unit_congruence(k, p, delta)
    return WssVerdict(k, p, delta, pi_p, pi_p2, residue, is_wss, method)


def _sieve_chunk(args: tuple[int, int, int, int]) -> list[int]:
    return _backend.wss_chunk(*args)


def sieve_chunks(p_min: int, p_max: int, width: int = SIEVE_CHUNK) -> list[tuple[int, int]]:
    """Fixed partition of [p_min, p_max]; independent of the worker count."""
    return [(lo, min(lo + width - 1, p_max)) for lo in range(p_min, p_max + 1, width)]


def wss_sieve(
    params: LucasParams | int, p_min: int, p_max: int, jobs: int = 1
) -> list[WssVerdict]:
    """All k-WSS primes in [p_min, p_max], as full verdicts in increasing p."""
    k = _as_params(params).k
    if not 2 <= p_min <= p_max:
        raise ValueError(f"need 2 <= p_min <= p_max, got [{p_min}, {p_max}]")
    if p_max > MAX_SIEVE_PRIME:
        raise ValueError(f"p_max {p_max} exceeds the sieve cap {MAX_SIEVE_PRIME}")
    disc = k * k + 4
    hits: set[int] = set()
    # p = 2 and primes dividing the discriminant go through the definition.
    special = [2] + factor(disc).primes
    hits.update(q for q in special if p_min <= q <= p_max and wss_test(k, q).is_wss)

    tasks = [(k, disc, lo, hi) for lo, hi in sieve_chunks(p_min, p_max)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sieve_chunk, tasks))
    else:
        results = [_sieve_chunk(t) for t in tasks]
    for chunk_hits in results:
        hits.update(chunk_hits)
    return [wss_test(k, p) for p in sorted(hits)]
