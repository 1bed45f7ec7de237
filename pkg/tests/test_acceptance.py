"""Acceptance gate: one test per criterion, each under its wall-clock limit.

Every criterion prints one PASS/FAIL line; the lines are repeated in the
pytest terminal summary.  Run directly with ``python tests/test_acceptance.py``
for the bare report.
"""

from __future__ import annotations

import contextlib
import json
import random
import time

import sympy

from oracles import analytic_class_number, brute_period, core_disc, lucas_seq, squarefree
from trinogen import _kernels_py, cli
from trinogen.arith import is_prime, jacobi
from trinogen.lucas import period, wss_sieve, wss_test
from trinogen.monogenic import dedekind_check, jks_check, monogenicity_report, verify_main_theorem
from trinogen.polyfp import Trinomial, discriminant_resultant, is_irreducible_mod_p, swan_discriminant
from trinogen.quadfield import (
    QuadInt,
    class_number_real,
    field_data,
    form_cycles,
    main1_congruence,
    quad_pow,
    unit_order,
)

RESULTS: list[str] = []
X = sympy.Symbol("x")


@contextlib.contextmanager
def criterion(number: int, title: str, limit_s: float):
    start = time.perf_counter()
    ok = False
    note = ""
    try:
        yield
        ok = True
    except AssertionError as exc:
        note = f" ({str(exc).splitlines()[0][:120]})" if str(exc) else ""
        raise
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < limit_s
        status = "PASS" if ok and within else "FAIL"
        if ok and not within:
            note = f" (over the {limit_s:g} s limit)"
        line = f"{status} criterion {number:2d}: {title} [{elapsed:.2f} s / {limit_s:g} s]{note}"
        RESULTS.append(line)
        print(line)
    assert within, f"criterion {number} took {elapsed:.2f} s, limit {limit_s} s"


def odd_primes(limit: int) -> list[int]:
    return [p for p in range(3, limit + 1) if is_prime(p)]


def test_criterion_01_wss_detection(capsys):
    with criterion(1, "2-WSS prime 13 detected, Pell oracle U_14 = 80782 = 169 * 478", 1):
        v = wss_test(2, 13)
        assert v.is_wss is True and v.u_residue == 0
        code = cli.main(["wss", "check", "--k", "2", "--p", "13"])
        rec = json.loads(capsys.readouterr().out)
        assert code == 0 and rec["result"]["is_wss"] is True and rec["result"]["u_residue"] == "0"
        pell = lucas_seq(2, 15, 169)
        assert pell[14] == 0 and lucas_seq(2, 15)[14] == 80782 == 169 * 478


def test_criterion_02_fibonacci_sieve():
    with criterion(2, "Fibonacci sieve to 1e5 finds no WSS prime", 60):
        assert wss_sieve(1, 2, 100_000, jobs=1) == []
        # the pure-Python kernel must agree on its own
        assert list(_kernels_py.wss_chunk(1, 5, 3, 100_000)) == []


def test_criterion_03_basic_quadratic_sweep():
    with criterion(3, "x^2 - kx - 1 monogenic iff k != 0 mod 4 and D squarefree, k <= 500", 10):
        for k in range(1, 501):
            expected = k % 4 != 0 and squarefree(core_disc(k))
            got = monogenicity_report(Trinomial(2, 1, -k, -1)).is_monogenic
            assert got is expected, f"k={k}: got {got}, expected {expected}"


def test_criterion_04_theorem_grid():
    with criterion(4, "WSS/monogenicity equivalence on k <= 30, s in {2,3,5,7,13}, depth 2", 300):
        cells = 0
        for k in range(1, 31):
            for s in (2, 3, 5, 7, 13):
                if 2 * s**2 > 4096:
                    continue
                rep = verify_main_theorem(k, s, 2)
                if not rep.hypotheses_hold:
                    continue
                cells += 1
                assert rep.consistent_with_theorem is True, f"k={k}, s={s}: {rep}"
                if (k, s) == (2, 13):
                    f1 = rep.family_reports[0]
                    assert str(f1.trinomial) == "x^26 - 2x^13 - 1"
                    assert f1.is_monogenic is False and 13 in f1.index_primes
        assert cells > 0


def _irreducible_over_q(t: Trinomial, delta: int) -> bool:
    f = t.to_intpoly()
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23):
        if delta % p and is_irreducible_mod_p(f.mod(p)):
            return True
    return sympy.Poly(X**t.N + t.A * X**t.M + t.B, X).is_irreducible


def test_criterion_05_jks_versus_dedekind():
    with criterion(5, "JKS and Dedekind agree on every irreducible trinomial, N <= 12, |A|,|B| <= 6", 300):
        checked = 0
        disagreements = []
        for n in range(2, 13):
            for m in range(1, n):
                for a in range(-6, 7):
                    for b in range(-6, 7):
                        if a == 0 or b == 0:
                            continue
                        t = Trinomial(n, m, a, b)
                        delta = swan_discriminant(t)
                        if delta == 0 or not _irreducible_over_q(t, delta):
                            continue
                        for p in (q for q in range(2, 51) if is_prime(q) and delta % q == 0):
                            checked += 1
                            if jks_check(t, p).divides_index != dedekind_check(t, p).divides_index:
                                disagreements.append((n, m, a, b, p))
        assert checked > 10_000
        assert disagreements == [], f"{len(disagreements)} disagreements, first {disagreements[:5]}"


def test_criterion_06_discriminant_oracle():
    with criterion(6, "Swan discriminant equals the Sylvester resultant on 200 random trinomials", 10):
        rng = random.Random(6)
        for _ in range(200):
            n = rng.randint(2, 12)
            t = Trinomial(n, rng.randint(1, n - 1), rng.randint(-20, 20), rng.randint(-20, 20))
            assert swan_discriminant(t) == discriminant_resultant(t.to_intpoly()), str(t)


def test_criterion_07_period_laws():
    with criterion(7, "period laws for k <= 50, odd p <= 100", 30):
        for k in range(1, 51):
            for p in odd_primes(100):
                pi = period(k, p).pi
                assert pi == brute_period(k, p)
                assert (pi == 2) == (k % p == 0), (k, p)
                assert pi % 2 == 0, (k, p)
                assert period(k, p * p).pi in (pi, p * pi), (k, p)
                delta = jacobi(core_disc(k), p)
                if delta == 1:
                    assert (p - 1) % pi == 0, (k, p)
                if delta == -1:
                    assert 2 * (p + 1) % pi == 0, (k, p)


def test_criterion_08_unit_order_bridge():
    with criterion(8, "order of epsilon mod p and p^2 equals the period; eps^(p+1) = -1 mod p", 30):
        cases = 0
        for k in range(1, 21):
            for p in odd_primes(100):
                if jacobi(core_disc(k), p) != -1:
                    continue
                cases += 1
                assert unit_order(k, p) == period(k, p).pi, (k, p)
                assert unit_order(k, p * p) == period(k, p * p).pi, (k, p)
                assert (quad_pow(QuadInt.epsilon(k, p), p + 1) + 1).is_zero(), (k, p)
        assert cases > 100


def test_criterion_09_equivalence_chain():
    with criterion(9, "wss_test = main1_congruence = (pi(p) == pi(p^2)), k <= 30, p <= 500", 120):
        cases = wss_seen = 0
        for k in range(1, 31):
            if k == 4 or not squarefree(core_disc(k)):
                continue
            fd = field_data(k)
            for p in odd_primes(500):
                if (fd.D * fd.class_number) % p == 0 or jacobi(fd.D, p) != -1 or k % p == 0:
                    continue
                cases += 1
                a = wss_test(k, p).is_wss
                b = main1_congruence(k, p, 1)
                c = period(k, p).pi == period(k, p * p).pi
                assert a == b == c, (k, p, a, b, c)
                wss_seen += a
        assert cases > 500 and wss_seen > 0


def _brute_reduced_form_classes(d: int) -> int:
    # Wide classes: reduced forms up to rho-cycles and the sign flip (a,b,c) -> (-a,b,-c).
    cycles = form_cycles(d)
    index = {f: i for i, cyc in enumerate(cycles) for f in cyc}
    parent = list(range(len(cycles)))

    def find(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for (a, b, c), i in index.items():
        parent[find(i)] = find(index[(-a, b, -c)])
    return len({find(i) for i in range(len(cycles))})


def test_criterion_10_class_numbers():
    with criterion(10, "class numbers h(5) = h(8) = h(13) = 1 and h(40) = h(60) = 2", 1):
        for d, h in ((5, 1), (8, 1), (13, 1), (40, 2), (60, 2)):
            assert class_number_real(d) == h, d
            assert analytic_class_number(d) == h, d
            assert _brute_reduced_form_classes(d) == h, d


if __name__ == "__main__":
    import io as _io
    import sys

    class _Capture:
        def readouterr(self):
            out = sys.stdout.getvalue()
            sys.stdout.seek(0)
            sys.stdout.truncate()
            return type("R", (), {"out": out})

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            real = sys.stdout
            try:
                if "capsys" in fn.__code__.co_varnames[: fn.__code__.co_argcount]:
                    sys.stdout = _io.StringIO()
                    try:
                        fn(_Capture())
                    finally:
                        sys.stdout = real
                        print(RESULTS[-1])
                else:
                    fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
