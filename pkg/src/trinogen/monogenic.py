"""Monogenicity of trinomials x^N + A x^M + B.

Two independent per-prime index tests are provided: the trinomial-specific
criterion of Jakhar, Khanduja and Sangwan (``jks_check``) and Dedekind's
criterion (``dedekind_check``).  Since Delta(f) = [Z_K : Z[theta]]^2 Delta(K),
only primes whose square divides Delta(f) can divide the index.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import comb, prod

from trinogen.arith import (
    MAX_BITS,
    factor,
    is_prime,
    is_square,
    is_squarefree,
    jacobi,
    trial_division,
    valuation,
)
from trinogen.lucas import core_discriminant, wss_test
from trinogen.polyfp import (
    RESULTANT_DEGREE_CAP,
    IntPoly,
    PolyFp,
    Trinomial,
    degree_cap,
    factor_mod_p,
    is_irreducible_mod_p,
    poly_gcd_fp,
    swan_discriminant,
)
from trinogen.quadfield import field_data

# Dedekind runs alongside JKS up to this degree.
CROSS_CHECK_DEGREE = RESULTANT_DEGREE_CAP


class Rule(str, enum.Enum):
    JKS1 = "jks1"
    JKS2 = "jks2"
    JKS3 = "jks3"
    JKS4 = "jks4"
    JKS5 = "jks5"
    DEDEKIND = "dedekind"
    # p^2 does not divide Delta(f), so p cannot divide the index.
    SQUAREFREE = "squarefree"


class CriterionMismatch(RuntimeError):
    """JKS and Dedekind disagreed on a prime; never expected."""


@dataclass(frozen=True)
class PrimeIndexVerdict:
    p: int
    divides_index: bool
    rule: Rule
    detail: str
    dedekind_agrees: bool | None = None


@dataclass
class MonogenicityReport:
    trinomial: Trinomial
    discriminant: int
    irreducible: bool | None
    irreducibility_source: str
    verdicts: list[PrimeIndexVerdict]
    is_monogenic: bool | None
    untested_cofactors: list[int] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.untested_cofactors

    @property
    def index_primes(self) -> list[int]:
        return [v.p for v in self.verdicts if v.divides_index]


@dataclass
class TheoremReport:
    k: int
    s: int
    depth: int
    hypothesis_checks: dict
    hypotheses_hold: bool
    wss_divisors: list[int]
    family_results: list[tuple[int, bool | None]]
    consistent_with_theorem: bool | None
    family_reports: list[MonogenicityReport] = field(default_factory=list, repr=False)


def family_irreducible(k: int, s: int, n: int) -> bool | None:
    """Irreducibility of x^(2s^n) - k x^(s^n) - 1 over Q.

    True when D is squarefree (Capelli's criterion applied to the unit);
    ``None`` (unknown) otherwise.  For s = 1 the quadratic is irreducible
    for every k >= 1 since k^2 + 4 is never a square.
    """
    if k < 1 or s < 1 or n < 1:
        raise ValueError("k, s, n must be positive")
    if k == 4:
        raise ValueError("k = 4 is excluded")
    if s == 1:
        return True
    return True if is_squarefree(core_discriminant(k)) else None


def jks_check(t: Trinomial, p: int) -> PrimeIndexVerdict:
    """Decide whether p divides [Z_K : Z[theta]] by the JKS trinomial criterion.

    Exactly one of five cases applies, chosen by whether p divides A, B and M.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    N, M, A, B = t.N, t.M, t.A, t.B
    delta = swan_discriminant(t)
    if delta % p:
        raise ValueError(f"{p} does not divide the discriminant of {t}")
    N1, M1 = t.N1, t.M1
    pp = p * p

    if A % p == 0 and B % p == 0:
        ok = B % pp != 0
        return PrimeIndexVerdict(p, not ok, Rule.JKS1, f"p^2 {'does not divide' if ok else 'divides'} B")

    if A % p == 0:
        e = valuation(N, p)
        a2 = A // p
        b1 = (B + pow(-B, p**e, pp)) % pp // p
        first = a2 % p == 0 and b1 % p != 0
        second = a2 * (pow(-B, M1, p) * pow(a2, N1, p) - pow(-b1, N1, p)) % p != 0
        ok = first or second
        detail = f"A2={a2 % p}, B1={b1} (mod {p}); first={first}, second={second}"
        return PrimeIndexVerdict(p, not ok, Rule.JKS2, detail)

    if B % p == 0:
        j = valuation(N - M, p)
        a1 = (A + pow(-A, p**j, pp)) % pp // p
        b2 = B // p
        first = a1 % p == 0 and b2 % p != 0
        core = pow(-A, M1, p) * pow(a1, N1 - M1, p) - pow(-b2, N1 - M1, p)
        second = a1 * pow(b2, M - 1, p) * core % p != 0
        ok = first or second
        detail = f"A1={a1}, B2={b2 % p} (mod {p}); first={first}, second={second}"
        return PrimeIndexVerdict(p, not ok, Rule.JKS3, detail)

    if M % p == 0:
        m = min(valuation(N, p), valuation(M, p))
        big = p**m
        u, v = N // big, M // big
        f1 = [0] * (u + 1)
        f1[0], f1[v], f1[u] = B, A, 1
        # (A y^P + B + (-A y - B)^P) / p with y = x^v, P = p^m
        in_y = [0] * (big + 1)
        for i in range(big + 1):
            in_y[i] = comb(big, i) * pow(-A, i, pp) * pow(-B, big - i, pp) % pp
        in_y[0] = (in_y[0] + B) % pp
        in_y[big] = (in_y[big] + A) % pp
        if any(c % p for c in in_y):
            raise ArithmeticError("JKS case 4 polynomial is not divisible by p")
        second = [0] * (big * v + 1)
        for i, c in enumerate(in_y):
            second[i * v] = c // p
        g = poly_gcd_fp(PolyFp(p, tuple(f1)), PolyFp(p, tuple(second)))
        ok = g.is_one()
        detail = f"m={m}; gcd of the two case-4 polynomials mod {p} has degree {g.degree}"
        return PrimeIndexVerdict(p, not ok, Rule.JKS4, detail)

    reduced = t.D_swan // t.r**N1
    ok = reduced % pp != 0
    return PrimeIndexVerdict(p, not ok, Rule.JKS5, f"p^2 {'does not divide' if ok else 'divides'} D/r^N1")


def dedekind_check(f: IntPoly | Trinomial, p: int) -> PrimeIndexVerdict:
    """Decide whether p divides [Z_K : Z[theta]] by Dedekind's criterion."""
    if isinstance(f, Trinomial):
        f = f.to_intpoly()
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f.lc != 1:
        raise ValueError("Dedekind's criterion needs a monic polynomial")
    fbar = f.mod(p)
    factors = factor_mod_p(fbar)
    g = prod((tau.lift() for tau, _ in factors), start=IntPoly((1,)))
    hbar = prod((tau ** (e - 1) for tau, e in factors), start=PolyFp(p, (1,)))
    h = hbar.lift()
    diff = g * h - f
    if any(c % p for c in diff.coeffs):
        raise ArithmeticError(f"g*h - f is not divisible by {p}; factorization is inconsistent")
    F = PolyFp(p, tuple(c // p for c in diff.coeffs))
    common = poly_gcd_fp(poly_gcd_fp(F, g.mod(p)), hbar)
    divides = not common.is_one()
    shape = " * ".join(f"({tau})^{e}" for tau, e in factors)
    detail = f"f = {shape} mod {p}; gcd(F, g, h) has degree {common.degree}"
    return PrimeIndexVerdict(p, divides, Rule.DEDEKIND, detail)


def _discriminant_primes(t: Trinomial) -> tuple[list[int], list[int]]:
    """Primes of |B| * |D|, plus any cofactors too large to factor."""
    primes: set[int] = set()
    leftover: list[int] = []
    for n in (abs(t.B), abs(t.D_swan)):
        if n <= 1:
            continue
        small, rest = trial_division(n)
        primes.update(small)
        if rest == 1:
            continue
        if rest.bit_length() <= MAX_BITS:
            primes.update(factor(rest).primes)
        else:
            leftover.append(rest)
    return sorted(primes), leftover


def _irreducibility(t: Trinomial, delta: int) -> tuple[bool | None, str]:
    if t.N == 2:
        return (not is_square(delta)), "quadratic"
    if t.B == 0:
        return False, "x divides f"
    f = t.to_intpoly()
    for p in (q for q in range(2, 200) if is_prime(q)):
        if delta % p and is_irreducible_mod_p(f.mod(p)):
            return True, f"irreducible mod {p}"
    return None, "unknown"


def _report(
    t: Trinomial,
    primes: list[int],
    leftover: list[int],
    irreducible: bool | None,
    source: str,
    cross_check: bool | None,
) -> MonogenicityReport:
    delta = swan_discriminant(t)
    if delta == 0:
        raise ValueError(f"{t} has a repeated root")
    do_cross = t.N <= CROSS_CHECK_DEGREE if cross_check is None else cross_check
    verdicts = []
    for p in primes:
        if delta % (p * p):
            verdicts.append(PrimeIndexVerdict(p, False, Rule.SQUAREFREE, "p^2 does not divide Delta(f)"))
            continue
        v = jks_check(t, p)
        if do_cross:
            d = dedekind_check(t, p)
            if d.divides_index != v.divides_index:
                raise CriterionMismatch(f"{t}, p={p}: JKS says {v.divides_index}, Dedekind says {d.divides_index}")
            v = PrimeIndexVerdict(v.p, v.divides_index, v.rule, v.detail, True)
        verdicts.append(v)
    if irreducible is False:
        mono: bool | None = False
    elif any(v.divides_index for v in verdicts):
        mono = False if irreducible else None
    elif irreducible and not leftover:
        mono = True
    else:
        mono = None
    return MonogenicityReport(t, delta, irreducible, source, verdicts, mono, leftover)


def monogenicity_report(
    t: Trinomial, attest_irreducible: bool = False, cross_check: bool | None = None
) -> MonogenicityReport:
    """Monogenicity verdict for an arbitrary trinomial.

    Irreducibility over Q is taken from ``attest_irreducible`` when set;
    otherwise it is decided for quadratics, proven by finding an irreducible
    reduction mod a small prime, or left unknown.  ``is_monogenic`` is None
    whenever the answer depends on something unverified.
    """
    if t.N > degree_cap():
        raise ValueError(f"degree {t.N} exceeds the cap {degree_cap()}")
    delta = swan_discriminant(t)
    if attest_irreducible:
        irreducible, source = True, "attested"
    else:
        irreducible, source = _irreducibility(t, delta)
    primes, leftover = _discriminant_primes(t)
    return _report(t, primes, leftover, irreducible, source, cross_check)


def family_report(k: int, s: int, n: int, cross_check: bool | None = None) -> MonogenicityReport:
    """Report for x^(2s^n) - k x^(s^n) - 1.

    The primes of Delta are those of s(k^2 + 4), since
    |Delta| = s^(2n s^n) (k^2 + 4)^(s^n).
    """
    t = Trinomial.family(k, s, n)
    if t.N > degree_cap():
        raise ValueError(f"degree {t.N} exceeds the cap {degree_cap()}")
    irreducible = family_irreducible(k, s, n)
    primes = sorted(set(factor(s).primes) | set(factor(k * k + 4).primes))
    return _report(t, primes, [], irreducible, "family lemma" if irreducible else "unknown", cross_check)


def verify_main_theorem(k: int, s: int, depth: int = 2) -> TheoremReport:
    """Check both sides of the WSS / monogenicity equivalence for one (k, s).

    Hypotheses: k != 0 mod 4, D squarefree, and for every odd prime p | s,
    D is a non-residue mod p and gcd(p, hD) = 1.  When they fail the report
    comes back with ``consistent_with_theorem = None``.
    """
    if k < 1 or s < 1 or depth < 1:
        raise ValueError("k, s and depth must be positive")
    if 2 * s**depth > degree_cap():
        raise ValueError(f"degree 2*{s}^{depth} exceeds the cap {degree_cap()}")
    odd = [p for p in factor(s).primes if p > 2]
    checks: dict = {
        "k_mod_4_ok": k % 4 != 0,
        "D_squarefree": is_squarefree(core_discriminant(k)),
        "delta_minus1_per_odd_p": {},
        "gcd_p_hD_per_odd_p": {},
    }
    holds = checks["k_mod_4_ok"] and checks["D_squarefree"]
    if holds:
        fd = field_data(k)
        for p in odd:
            checks["delta_minus1_per_odd_p"][p] = jacobi(fd.D, p) == -1
            checks["gcd_p_hD_per_odd_p"][p] = (fd.class_number * fd.D) % p != 0
        holds = all(checks["delta_minus1_per_odd_p"].values()) and all(checks["gcd_p_hD_per_odd_p"].values())
    if not holds:
        return TheoremReport(k, s, depth, checks, False, [], [], None)

    wss = [p for p in factor(s).primes if wss_test(k, p).is_wss]
    reports = [family_report(k, s, n) for n in range(1, depth + 1)]
    results = [(n, r.is_monogenic) for n, r in enumerate(reports, start=1)]
    consistent = (not wss) == all(mono is True for _, mono in results)
    return TheoremReport(k, s, depth, checks, True, wss, results, consistent, reports)


__all__ = [
    "CriterionMismatch",
    "MonogenicityReport",
    "PrimeIndexVerdict",
    "Rule",
    "TheoremReport",
    "dedekind_check",
    "family_irreducible",
    "family_report",
    "jks_check",
    "monogenicity_report",
    "verify_main_theorem",
]
