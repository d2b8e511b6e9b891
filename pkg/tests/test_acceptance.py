"""Exit criteria of the build, one test per criterion.

Run with ``pytest tests/test_acceptance.py -s`` (or ``python tests/test_acceptance.py``)
to see one PASS/FAIL line per criterion.  Every check is exact equality in
Lambda_n mod p^M; the time limits are asserted alongside.
"""

import random
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import rand_element  # noqa: E402
from iwasawa_theta import (  # noqa: E402
    CurveSpec,
    FieldSpec,
    IdealHandle,
    LayerElement,
    PadicContext,
    PresentationMatrix,
    base_change,
    check_hypotheses,
    check_norm_compat,
    contains,
    count_points_ap,
    diagonal,
    equals,
    fitting_ideal,
    full_norm_ideal,
    gal_twist,
    generate_tower,
    gross_point_matrix_p,
    iota,
    is_principal,
    local_embedding_matrix,
    norm_map,
    product,
    project,
    stabilize,
    two_generator_ideal,
    unit_root,
    validate_tower,
    verify_lemma_21,
    verify_lemma_22,
    verify_main_identity,
)
from iwasawa_theta.padic import is_prime  # noqa: E402
from iwasawa_theta.theta import functional_eq_holds  # noqa: E402
from oracles import EnumeratedLayer  # noqa: E402

pytestmark = pytest.mark.acceptance


def report(k, ok, detail, elapsed=None, limit=None):
    timing = "" if elapsed is None else f" [{elapsed:.2f}s" + (f" < {limit}s]" if limit else "]")
    print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {k}: {detail}{timing}")
    assert ok, detail
    if limit is not None:
        assert elapsed < limit, f"criterion {k} took {elapsed:.2f}s, limit {limit}s"


def _towers():
    """The 100 seeded strict towers shared by criteria 2-4 (p in {3,5}, N = 2)."""
    rng = random.Random(2024)
    towers = []
    for i in range(100):
        p = 3 if i % 2 == 0 else 5
        ctx = PadicContext(p, rng.randint(1, 3))
        if i % 10 in (0, 1):
            ap = 1 + p * rng.randrange(ctx.modulus)  # a_p = 1 mod p: (Na) fails
        else:
            ap = rng.choice([a for a in range(ctx.modulus) if a % p])
        towers.append(generate_tower(1000 + i, ctx, 2, ap))
    return towers


TOWERS = _towers()


def test_criterion_01_structure_maps():
    t0 = time.perf_counter()
    rng = random.Random(1)
    trials = 0
    for p in (3, 5):
        for M in (1, 2, 3):
            ctx = PadicContext(p, M)
            for i in range(200):
                n = 1 + i % 2
                a, b = rand_element(rng, ctx, n - 1), rand_element(rng, ctx, n)
                c = rand_element(rng, ctx, n)
                assert project(norm_map(a)) == a * p
                assert norm_map(project(b)) == norm_map(LayerElement.one(ctx, n - 1)) * b
                assert norm_map(a) * b == norm_map(a * project(b))
                assert iota(iota(b)) == b and iota(b * c) == iota(b) * iota(c) and iota(b + c) == iota(b) + iota(c)
                assert iota(project(b)) == project(iota(b))
                trials += 1
    report(1, True, f"pi.nu = p, nu.pi = nu(1), projection formula, iota, iota.pi = pi.iota on {trials} random elements",
           time.perf_counter() - t0, 10)


def test_criterion_02_lemma21():
    t0 = time.perf_counter()
    ok = sum(verify_lemma_21(T, 2) for T in TOWERS)
    report(2, ok == 100, f"verify_lemma_21 at n=2 true in {ok}/100 strict towers", time.perf_counter() - t0, 60)


def test_criterion_03_lemma22():
    t0 = time.perf_counter()
    results = [(T.na_holds(), verify_lemma_22(T, 2)) for T in TOWERS]
    na = [r for holds, r in results if holds]
    fwd = sum(r.inclusion_fwd for _, r in results)
    eq = sum(r.equal for r in na)
    ok = fwd == 100 and eq == len(na) and len(na) < 100
    report(3, ok, f"equal in {eq}/{len(na)} towers with (Na); inclusion_fwd in {fwd}/100 (incl. {100 - len(na)} with a_p = 1 mod p)",
           time.perf_counter() - t0, 60)


def test_criterion_04_norm_compatibility():
    ok = 0
    for T in TOWERS:
        S = stabilize(T)
        alpha = unit_root(T.a_p)
        level0 = S[0] == T[0] * (1 - alpha ** -1)
        ok += validate_tower(T, strict=True).ok and check_norm_compat(S).ok and level0
    report(4, ok == 100, f"stabilized towers norm compatible at every level (with (1 - 1/alpha) at level 0) in {ok}/100")


def test_criterion_05_ideal_oracle():
    t0 = time.perf_counter()
    ctx = PadicContext(3, 2)
    orc = EnumeratedLayer(3, 1, 2)
    assert len(orc.all) == 729
    rng = random.Random(5)
    agree = 0
    for _ in range(50):
        def rand_ideal():
            gens = []
            for _ in range(rng.randint(1, 3)):
                g = rand_element(rng, ctx, 1)
                if rng.random() < 0.75:
                    g = g * LayerElement.X(ctx, 1) + 3 * rng.randrange(9)
                gens.append(g)
            return IdealHandle(ctx, 1, gens)

        I, J = rand_ideal(), rand_ideal()
        sI = orc.ideal([orc.from_poly(g.coeffs) for g in I.generators])
        sJ = orc.ideal([orc.from_poly(g.coeffs) for g in J.generators])
        sIJ = orc.ideal([orc.from_poly((g * h).coeffs) for g in I.generators for h in J.generators])
        span = orc.ideal([orc.from_poly(r) for r in product(I, J).canonical.rows])
        good = equals(I, J) == np.array_equal(sI, sJ)
        good &= equals(I, I) and np.array_equal(sIJ, span)
        good &= (is_principal(I) is not None) == orc.is_principal(sI)
        for v in orc.all[rng.sample(range(729), 60)]:
            good &= contains(I, LayerElement(ctx, 1, orc.to_poly(v))) == orc.contains(sI, v)
        agree += bool(good)
    report(5, agree == 50, f"contains/equals/product/is_principal agree with enumeration of the 729-element ring in {agree}/50",
           time.perf_counter() - t0, 120)


def test_criterion_06_fitting_base_change():
    ctx = PadicContext(3, 2)
    rng = random.Random(6)
    ok = 0
    for _ in range(50):
        r = rng.randint(1, 3)
        s = rng.randint(r, 4)
        P = PresentationMatrix.from_rows([[rand_element(rng, ctx, 1) for _ in range(s)] for _ in range(r)])
        ok += equals(fitting_ideal(P).image(0), fitting_ideal(base_change(P, 0)))
    report(6, ok == 50, f"pi(Fitt(P)) = Fitt(pi(P)) over Lambda_0 in {ok}/50 random presentations")


def test_criterion_07_main_identity_shape():
    rng = random.Random(7)
    ok = principal = 0
    for i in range(25):
        p = (3, 5)[i % 2]
        ctx = PadicContext(p, rng.randint(1, 3))
        ap = rng.choice([a for a in range(ctx.modulus) if a % p and (a - 1) % p])
        T = generate_tower(500 + i, ctx, 2, ap)
        g = stabilize(T)[2]
        rep = verify_main_identity(T, 2, diagonal(g, g))
        ok += rep.equal and rep.principal
        principal += is_principal(rep.squared) is not None
    report(7, ok == 25 and principal == 25, f"main identity equal and principal in {ok}/25; squared ideal principal in {principal}/25")


def test_criterion_08_gal_ambiguity():
    rng = random.Random(8)
    ok = 0
    for i in range(50):
        p = (3, 5)[i % 2]
        ctx = PadicContext(p, rng.randint(1, 3))
        ap = rng.choice([a for a in range(ctx.modulus) if a % p])
        T = generate_tower(800 + i, ctx, 2, ap)
        S = stabilize(T)
        twisted = T
        for n in range(3):
            twisted = twisted.replace(n, gal_twist(T[n], rng.randrange(-30, 30)))
        k = rng.randrange(p**2)
        before = (two_generator_ideal(T, 2), full_norm_ideal(T, 2))
        after = (two_generator_ideal(twisted, 2), full_norm_ideal(twisted, 2))
        same = equals(before[0], after[0]) and equals(before[1], after[1])
        same &= equals(*before) == equals(*after)
        same &= (is_principal(before[0]) is None) == (is_principal(after[0]) is None)
        stab_b, stab_a = IdealHandle.of(S[2]), IdealHandle.of(gal_twist(S[2], k))
        same &= equals(before[0], stab_b) == equals(after[0], stab_a)
        same &= functional_eq_holds(S[2]) == functional_eq_holds(gal_twist(S[2], k))
        ok += bool(same)
    report(8, ok == 50, f"gamma^k twists change no ideal verdict in {ok}/50 trials")


def test_criterion_09_arithmetic_context():
    t0 = time.perf_counter()
    rng = random.Random(9)
    curves, checked = 0, 0
    while curves < 20:
        try:
            c = CurveSpec(*(rng.randint(-20, 20) for _ in range(5)), N=1)
        except ValueError:
            continue
        for ell in range(2, 101):
            if is_prime(ell) and c.discriminant % ell:
                a = count_points_ap(c, ell)
                assert a * a <= 4 * ell, (c, ell, a)
                checked += 1
        curves += 1
    rep = check_hypotheses(CurveSpec(0, 0, 0, 0, 1, 36), FieldSpec(7), 5)
    ok = rep.a_p == 0 and not rep.ordinary
    report(9, ok, f"Hasse bound on {checked} (curve, ell) pairs over 20 curves; y^2 = x^3 + 1 at p = 5 has a_5 = 0 and is rejected",
           time.perf_counter() - t0, 30)


def test_criterion_10_local_gross_matrices():
    ok = True
    details = []
    for D in (7, 11, 15, 23):
        A = local_embedding_matrix(FieldSpec(D))
        t, nrd = D, (D * D + D) // 4
        sq = [[sum(A[i][k] * A[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
        ok &= all(sq[i][j] - t * A[i][j] + (nrd if i == j else 0) == 0 for i in range(2) for j in range(2))
        p = next(q for q in range(5, 200) if is_prime(q) and D % q and pow(-D % q, (q - 1) // 2, q) == 1)
        ctx = PadicContext(p, 3)
        m = ctx.modulus
        # square root of -D by enumeration, smaller representative
        s = min(x for x in range(m) if (x * x + D) % m == 0)
        theta = (D - s) * pow(2, -1, m) % m
        for n in range(3):
            hand = [[theta * p**n % m, -1 % m], [p**n % m, 0]]
            ok &= gross_point_matrix_p(FieldSpec(D), n, ctx) == hand
        details.append(f"D_K={D}/p={p}")
    report(10, ok, "characteristic polynomial and [[theta p^n, -1], [p^n, 0]] for " + ", ".join(details))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
