# A synthetic theta tower, its p-stabilization, and the two ideal lemmas.
from iwasawa_theta import (
    PadicContext,
    check_norm_compat,
    generate_tower,
    lemma21_certificate,
    lemma22_certificate,
    lp_approx,
    mu_invariant,
    iota,
    norm_map,
    norm_to,
    stabilize,
    validate_tower,
    verify_lemma_21,
    verify_lemma_22,
)

ctx = PadicContext(3, 3)
T = generate_tower(seed=7, ctx=ctx, N=3, a_p=2, theta0=3)
print("strict relations hold:", validate_tower(T, strict=True).ok)

S = stabilize(T)
print("alpha =", S.alpha, " norm compatible:", check_norm_compat(S).ok)

# Every nu_{m,3} theta_m is a combination of theta_3 and nu theta_2.
n = 3
for m, (c, d) in enumerate(lemma21_certificate(T, n)):
    ok = norm_to(T[m], n) == c * T[n] + d * norm_map(T[n - 1])
    print(f"  m={m}: certificate reproduces nu_(m,n) theta_m: {ok}")
print("ideal equality (two generators vs all norms):", verify_lemma_21(T, n))

# Under (Na) both generators are multiples of the stabilized element.
g, h = lemma22_certificate(T, n)
print("theta_n = g * theta_n(f_alpha):", T[n] == g * S[n])
print(verify_lemma_22(T, n))

L = lp_approx(S, n)
print("L_p approximant fixed by iota:", iota(L) == L, " mu =", mu_invariant(L))
