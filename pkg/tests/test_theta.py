import random

import numpy as np
import pytest
import sympy as sp

from conftest import rand_element
from iwasawa_theta import (
    HypothesisViolation,
    IdealHandle,
    InvalidTower,
    LayerElement,
    LevelOutOfRange,
    PadicContext,
    PresentationMatrix,
    ThetaTower,
    check_functional_eq,
    check_norm_compat,
    diagonal,
    equals,
    full_norm_ideal,
    gal_twist,
    generate_tower,
    iota,
    lemma21_certificate,
    lemma22_certificate,
    lp_approx,
    mu_invariant,
    norm_map,
    norm_to,
    project,
    stabilize,
    two_generator_ideal,
    unit_root,
    validate_tower,
    verify_lemma_21,
    verify_lemma_22,
    verify_main_identity,
)
from iwasawa_theta.theta import StabilizedTower, functional_eq_holds
from oracles import EnumeratedLayer


def test_generated_tower_is_strict_valid_and_deterministic():
    ctx = PadicContext(3, 2)
    T = generate_tower(7, ctx, 2, 2)
    assert validate_tower(T, strict=True).ok
    assert T == generate_tower(7, ctx, 2, 2)
    assert T != generate_tower(8, ctx, 2, 2)
    assert project(T[1]) == T[0] * (T.a_p - 1)


def test_tampering_is_localised():
    ctx = PadicContext(3, 2)
    T = generate_tower(3, ctx, 2, 2)
    bad = T.replace(2, T[2] + 1)
    fails = validate_tower(bad, strict=True).failures()
    assert [(c.level, c.name) for c in fails] == [(2, "three-term relation at n=1")]


def test_height_one_tower_has_only_base_check():
    T = generate_tower(1, PadicContext(5, 2), 1, 3)
    assert [c.name.split()[0] for c in validate_tower(T, strict=True).checks] == ["base"]
    assert validate_tower(T, strict=False).checks == []


def test_base_relation_is_forced_symbolically():
    alpha, beta, theta0, t1 = sp.symbols("alpha beta theta0 t1")
    ap, p = alpha + beta, alpha * beta
    # pi(theta_1(f)) with pi(nu(theta_0)) = p * theta_0
    lhs = (t1 - p * theta0 / alpha) / alpha
    rhs = (1 - 1 / alpha) * theta0
    (solution,) = sp.solve(sp.Eq(lhs, rhs), t1)
    assert sp.simplify(solution - (ap - 1) * theta0) == 0


@pytest.mark.parametrize("p, M, ap", [(3, 2, 2), (3, 3, 4), (5, 2, 3), (5, 1, 1), (3, 1, 1)])
def test_stabilized_tower_is_norm_compatible(p, M, ap):
    ctx = PadicContext(p, M)
    for seed in range(5):
        T = generate_tower(seed, ctx, 3 if p == 3 else 2, ap)
        assert check_norm_compat(stabilize(T)).ok


def test_non_strict_base_breaks_level_zero_compat():
    ctx = PadicContext(3, 2)
    T = generate_tower(5, ctx, 2, 2)
    bad = T.replace(1, T[1] + 1)  # shifts pi(theta_1) away from (a_p - 1) theta_0
    assert not validate_tower(bad, strict=True).ok
    fails = check_norm_compat(stabilize(bad)).failures()
    assert 1 in [c.level for c in fails]


def test_stabilize_examples():
    ctx = PadicContext(3, 1)
    T = generate_tower(2, ctx, 2, 1)
    assert unit_root(T.a_p) == 1
    assert stabilize(T)[0].is_zero()
    ctx = PadicContext(5, 2)
    T0 = ThetaTower(ctx, ctx(3), (LayerElement.constant(ctx, 0, 7),))
    S = stabilize(T0)
    alpha = unit_root(ctx(3))
    assert S.N == 0 and S[0] == LayerElement.constant(ctx, 0, (7 * (1 - pow(alpha.value, -1, 25))) % 25)


def test_norm_compat_tamper_and_empty():
    ctx = PadicContext(3, 2)
    S = stabilize(generate_tower(4, ctx, 3, 2))
    levels = list(S.levels)
    levels[2] = levels[2] + 3
    fails = check_norm_compat(StabilizedTower(ctx, S.alpha, tuple(levels))).failures()
    assert len(fails) == 2  # level 2 feeds two adjacent checks
    top = list(S.levels)
    top[3] = top[3] + 1
    assert len(check_norm_compat(StabilizedTower(ctx, S.alpha, tuple(top))).failures()) == 1
    assert check_norm_compat(StabilizedTower(ctx, S.alpha, (S[0],))).ok


def test_ideal_constructors():
    ctx = PadicContext(3, 2)
    T = generate_tower(6, ctx, 2, 2)
    I = two_generator_ideal(T, 2)
    assert T[2] in I
    assert norm_to(T[0], 2) in full_norm_ideal(T, 2)
    assert equals(full_norm_ideal(T, 1), two_generator_ideal(T, 1))
    with pytest.raises(LevelOutOfRange):
        two_generator_ideal(T, 3)
    with pytest.raises(LevelOutOfRange):
        full_norm_ideal(T, 0)
    Z = ThetaTower(ctx, ctx(2), tuple(LayerElement.zero(ctx, n) for n in range(3)))
    assert two_generator_ideal(Z, 2).is_zero()


def test_two_generator_ideal_small_case_oracle():
    ctx = PadicContext(3, 2)
    orc = EnumeratedLayer(3, 1, 2)
    T = generate_tower(12, ctx, 1, 2)
    I = two_generator_ideal(T, 1)
    s = orc.ideal([orc.from_poly(T[1].coeffs), orc.from_poly(norm_map(T[0]).coeffs)])
    assert 3 ** I.log_order() == len(s)
    for v in orc.all[::7]:
        assert (LayerElement(ctx, 1, orc.to_poly(v)) in I) == orc.contains(s, v)


def test_lemma21_certificate_reproduces_norms():
    for p, N in [(3, 3), (5, 2)]:
        ctx = PadicContext(p, 2)
        T = generate_tower(17, ctx, N, 2)
        for n in range(1, N + 1):
            cert = lemma21_certificate(T, n)
            nu_prev = norm_map(T[n - 1])
            for m, (c, d) in enumerate(cert):
                assert norm_to(T[m], n) == c * T[n] + d * nu_prev
            assert verify_lemma_21(T, n)


def test_lemma21_on_non_strict_tower():
    ctx = PadicContext(3, 2)
    T = generate_tower(2, ctx, 3, 2)
    T = T.replace(1, T[1] + ctx.p * LayerElement.X(ctx, 1) + 1)
    # the shift changes pi(theta_1), so rebuild higher levels to keep three-term relations
    levels = list(T.levels[:2])
    for n in range(1, 3):
        levels.append((levels[n] * T.a_p - norm_map(levels[n - 1])).lift())
    T = ThetaTower(ctx, T.a_p, tuple(levels))
    assert validate_tower(T).ok and not validate_tower(T, strict=True).ok
    assert verify_lemma_21(T, 2) and verify_lemma_21(T, 3)


def test_lemma21_rejects_invalid():
    ctx = PadicContext(3, 2)
    T = generate_tower(2, ctx, 2, 2)
    with pytest.raises(InvalidTower):
        verify_lemma_21(T.replace(2, T[2] + 1), 2)


def test_lemma22_certificate():
    ctx = PadicContext(5, 3)
    T = generate_tower(9, ctx, 2, 3)
    S = stabilize(T)
    for n in (1, 2):
        g, h = lemma22_certificate(T, n)
        assert T[n] == g * S[n]
        assert norm_map(T[n - 1]) == h * S[n]
    with pytest.raises(HypothesisViolation):
        lemma22_certificate(generate_tower(9, ctx, 2, 6), 2)


def test_lemma22_results():
    ctx = PadicContext(3, 2)
    res = verify_lemma_22(generate_tower(1, ctx, 2, 2), 2)
    assert res.inclusion_fwd and res.equal and res.na_holds
    res = verify_lemma_22(generate_tower(1, ctx, 2, 4), 2)
    assert res.inclusion_fwd and not res.na_holds
    T = generate_tower(1, ctx, 2, 2)
    with pytest.raises(InvalidTower):
        verify_lemma_22(T.replace(1, T[1] + 1), 2)


def test_lp_approx():
    ctx = PadicContext(3, 2)
    T = generate_tower(21, ctx, 2, 2)
    S = stabilize(T)
    alpha_inv = pow(unit_root(T.a_p).value, -1, 9)
    L0 = lp_approx(S, 0)
    assert L0.coeffs == (((1 - alpha_inv) ** 2 * T[0].coeffs[0] ** 2) % 9,)
    for n in range(3):
        assert iota(lp_approx(S, n)) == lp_approx(S, n)
    for n in range(2):
        assert project(lp_approx(S, n + 1)) == lp_approx(S, n)
    with pytest.raises(LevelOutOfRange):
        lp_approx(S, 3)


def test_functional_equation_checker():
    ctx = PadicContext(3, 2)
    x = LayerElement.gamma(ctx, 1) + iota(LayerElement.gamma(ctx, 1))
    assert functional_eq_holds(x)
    assert functional_eq_holds(LayerElement.zero(ctx, 1))
    X = LayerElement.X(ctx, 1)
    orc = EnumeratedLayer(3, 1, 2)
    same = np.array_equal(orc.ideal([orc.from_poly(X.coeffs)]), orc.ideal([orc.from_poly(iota(X).coeffs)]))
    assert functional_eq_holds(X) == same
    S = stabilize(generate_tower(3, ctx, 2, 2))
    assert check_functional_eq(S, 0)


def test_mu_invariant():
    ctx = PadicContext(3, 3)
    assert mu_invariant(LayerElement.constant(ctx, 1, 3)) == 1
    assert mu_invariant(LayerElement.constant(ctx, 1, 2)) == 0
    assert mu_invariant(LayerElement(ctx, 1, [0, 9, 3])) == 1
    assert mu_invariant(LayerElement.zero(ctx, 1)) == 3


def test_mu_superadditive():
    ctx = PadicContext(3, 4)
    rng = random.Random(4)
    for _ in range(50):
        x = rand_element(rng, ctx, 1) * 3 ** rng.randint(0, 2)
        y = rand_element(rng, ctx, 1) * 3 ** rng.randint(0, 2)
        assert mu_invariant(x * y) >= min(mu_invariant(x) + mu_invariant(y), 4)
        c = 3 ** rng.randint(0, 2) * rng.choice([1, 2, 4, 5])
        assert mu_invariant(x * c) == min(mu_invariant(x) + mu_invariant(LayerElement.constant(ctx, 1, c)), 4)


def test_main_identity():
    ctx = PadicContext(5, 2)
    T = generate_tower(30, ctx, 2, 3)
    S = stabilize(T)
    rep = verify_main_identity(T, 2, diagonal(S[2], S[2]))
    assert rep.equal and rep.principal and rep.ok
    assert equals(IdealHandle.of(rep.generator), rep.squared)
    trivial = PresentationMatrix.from_rows([[LayerElement.one(ctx, 2)]])
    rep = verify_main_identity(T, 2, trivial)
    assert rep.equal == (rep.squared == IdealHandle.unit(ctx, 2))
    # scaling the tower by p keeps its relations and makes the theta ideal proper
    Tp = ThetaTower(ctx, T.a_p, tuple(t * 5 for t in T.levels))
    rep = verify_main_identity(Tp, 2, trivial)
    assert not rep.equal and rep.principal
    with pytest.raises(HypothesisViolation):
        verify_main_identity(generate_tower(30, ctx, 2, 1), 2, diagonal(S[2], S[2]))


def test_gal_twist_is_unit_multiple():
    ctx = PadicContext(3, 2)
    rng = random.Random(8)
    x = rand_element(rng, ctx, 2)
    for k in range(-2, 12):
        assert equals(IdealHandle.of(gal_twist(x, k)), IdealHandle.of(x))
    assert gal_twist(x, 9) == x


@pytest.mark.parametrize("p, M", [(3, 2), (3, 3), (5, 2), (5, 3)])
def test_lemmas_on_non_unit_bottom_level(p, M):
    # theta_0 in pZ_p (or zero) forces proper ideals, where the descent does real work
    ctx = PadicContext(p, M)
    rng = random.Random(p * M)
    proper = 0
    for seed in range(20):
        ap = rng.choice([a for a in range(ctx.modulus) if a % p and (a - 1) % p])
        T = generate_tower(seed, ctx, 3 if p == 3 else 2, ap, theta0=p * rng.randrange(ctx.modulus) if seed % 3 else 0)
        for n in range(1, T.N + 1):
            two = two_generator_ideal(T, n)
            proper += two.log_order() < M * p**n
            assert verify_lemma_21(T, n)
            res = verify_lemma_22(T, n)
            assert res.inclusion_fwd and res.inclusion_bwd and res.equal
            S = stabilize(T)
            assert verify_main_identity(T, n, diagonal(S[n], S[n])).ok
    assert proper == 20 * (3 if p == 3 else 2)


def test_generator_pins_bottom_level():
    ctx = PadicContext(3, 2)
    T = generate_tower(1, ctx, 2, 2, theta0=0)
    assert T[0].is_zero() and validate_tower(T, strict=True).ok
