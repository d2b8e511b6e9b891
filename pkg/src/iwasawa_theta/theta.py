"""Theta towers, p-stabilization and the ideal identities they satisfy.

A tower is a list ``theta_0, ..., theta_N`` with ``theta_n`` in layer ``n``,
subject to the three-term relation

    pi(theta_{n+1}) = a_p * theta_n - nu(theta_{n-1})        (1 <= n <= N-1)

and, for *strict* towers, the base relation ``pi(theta_1) = (a_p - 1) theta_0``.
The base relation is what makes the p-stabilized tower

    theta_n(f_alpha) = alpha^{-n} (theta_n - alpha^{-1} nu(theta_{n-1}))
    theta_0(f_alpha) = (1 - alpha^{-1}) theta_0

norm compatible at the bottom level as well.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .errors import HypothesisViolation, InvalidTower, LayerMismatch, LevelOutOfRange, NonOrdinary
from .fitting import PresentationMatrix, fitting_ideal
from .ideals import IdealHandle, equals, is_principal, square
from .layer import LayerElement, iota, norm_map, norm_to, omega, project
from .padic import PadicContext, PadicScalar, inv_unit, unit_root


@dataclass(frozen=True)
class ThetaTower:
    ctx: PadicContext
    a_p: PadicScalar
    levels: tuple[LayerElement, ...]

    def __post_init__(self):
        for n, t in enumerate(self.levels):
            if t.ctx != self.ctx or t.n != n:
                raise LayerMismatch(f"level {n} holds an element of layer {t.n}")

    @property
    def N(self) -> int:
        return len(self.levels) - 1

    def __getitem__(self, n: int) -> LayerElement:
        return self.levels[n]

    def na_holds(self) -> bool:
        """(Na): a_p is not congruent to 1 mod p."""
        return (self.a_p.value - 1) % self.ctx.p != 0

    def replace(self, n: int, value: LayerElement) -> ThetaTower:
        levels = list(self.levels)
        levels[n] = value
        return ThetaTower(self.ctx, self.a_p, tuple(levels))


@dataclass(frozen=True)
class StabilizedTower:
    ctx: PadicContext
    alpha: PadicScalar
    levels: tuple[LayerElement, ...]

    @property
    def N(self) -> int:
        return len(self.levels) - 1

    def __getitem__(self, n: int) -> LayerElement:
        return self.levels[n]


@dataclass(frozen=True)
class Check:
    name: str
    level: int
    ok: bool


@dataclass
class TowerReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]


def _scalar(ctx: PadicContext, a) -> PadicScalar:
    return a if isinstance(a, PadicScalar) else PadicScalar(ctx, a)


def validate_tower(T: ThetaTower, strict: bool = False) -> TowerReport:
    """Check the three-term relation at every level and, if strict, the base relation.

    The three-term check labelled ``level = n + 1`` compares
    ``pi(theta_{n+1})`` with ``a_p theta_n - nu(theta_{n-1})``.
    """
    report = TowerReport()
    if strict and T.N >= 1:
        ok = project(T[1]) == T[0] * (T.a_p - 1)
        report.checks.append(Check("base relation pi(theta_1) = (a_p - 1) theta_0", 1, ok))
    for n in range(1, T.N):
        ok = project(T[n + 1]) == T[n] * T.a_p - norm_map(T[n - 1])
        report.checks.append(Check(f"three-term relation at n={n}", n + 1, ok))
    return report


def _random_element(rng: random.Random, ctx: PadicContext, n: int) -> LayerElement:
    return LayerElement(ctx, n, [rng.randrange(ctx.modulus) for _ in range(ctx.p**n)])


def generate_tower(seed: int, ctx: PadicContext, N: int, a_p, theta0: Optional[int] = None) -> ThetaTower:
    """A pseudorandom strict tower: each level is a lift plus a random multiple of omega.

    ``theta0`` pins the bottom level; by default it is random too.
    """
    a_p = _scalar(ctx, a_p)
    if not a_p.is_unit():
        raise NonOrdinary(f"a_p = {a_p.value} is divisible by p = {ctx.p}")
    rng = random.Random(seed)
    levels = [_random_element(rng, ctx, 0)]
    if theta0 is not None:
        levels[0] = LayerElement.constant(ctx, 0, theta0)
    if N >= 1:
        base = levels[0] * (a_p - 1)
        levels.append(base.lift() + omega(ctx, 0, 1) * _random_element(rng, ctx, 1))
    for n in range(1, N):
        target = levels[n] * a_p - norm_map(levels[n - 1])
        levels.append(target.lift() + omega(ctx, n, n + 1) * _random_element(rng, ctx, n + 1))
    return ThetaTower(ctx, a_p, tuple(levels))


def stabilize(T: ThetaTower) -> StabilizedTower:
    alpha = unit_root(T.a_p)
    ainv = inv_unit(alpha)
    levels = [T[0] * (1 - ainv)]
    for n in range(1, T.N + 1):
        levels.append((T[n] - norm_map(T[n - 1]) * ainv) * ainv**n)
    return StabilizedTower(T.ctx, alpha, tuple(levels))


def check_norm_compat(S: StabilizedTower) -> TowerReport:
    report = TowerReport()
    for n in range(S.N):
        ok = project(S[n + 1]) == S[n]
        report.checks.append(Check(f"norm compatibility pi(theta_{n + 1}) = theta_{n}", n + 1, ok))
    return report


def _level_range(T, n: int, low: int = 1):
    if not low <= n <= T.N:
        raise LevelOutOfRange(f"level {n} outside [{low}, {T.N}]")


def two_generator_ideal(T: ThetaTower, n: int) -> IdealHandle:
    _level_range(T, n)
    return IdealHandle(T.ctx, n, [T[n], norm_map(T[n - 1])])


def full_norm_ideal(T: ThetaTower, n: int) -> IdealHandle:
    _level_range(T, n)
    return IdealHandle(T.ctx, n, [norm_to(T[m], n) for m in range(n + 1)])


def verify_lemma_21(T: ThetaTower, n: int) -> bool:
    """(theta_n, nu theta_{n-1}) == (nu_{m,n} theta_m : 0 <= m <= n)."""
    _level_range(T, n)
    if not validate_tower(T, strict=False).ok:
        raise InvalidTower("three-term relation fails")
    return equals(two_generator_ideal(T, n), full_norm_ideal(T, n))


def lemma21_certificate(T: ThetaTower, n: int) -> list[tuple[LayerElement, LayerElement]]:
    """Coefficients ``(c_m, d_m)`` with ``nu_{m,n} theta_m = c_m theta_n + d_m nu theta_{n-1}``.

    Runs the descent E_{k-2} = a_p E_{k-1} - f_k E_k for E_k = nu_{k,n} theta_k,
    where f_k is a lift to layer n of nu_{k-1,k}(1).
    """
    _level_range(T, n)
    ctx = T.ctx
    one, zero = LayerElement.one(ctx, n), LayerElement.zero(ctx, n)
    coeffs: dict[int, tuple[LayerElement, LayerElement]] = {n: (one, zero), n - 1: (zero, one)}
    for k in range(n, 1, -1):
        f = norm_map(LayerElement.one(ctx, k - 1))
        while f.n < n:
            f = f.lift()
        c1, d1 = coeffs[k - 1]
        c0, d0 = coeffs[k]
        coeffs[k - 2] = (c1 * T.a_p - f * c0, d1 * T.a_p - f * d0)
    return [coeffs[m] for m in range(n + 1)]


@dataclass(frozen=True)
class Lemma22Result:
    inclusion_fwd: bool
    inclusion_bwd: bool
    equal: bool
    na_holds: bool


def verify_lemma_22(T: ThetaTower, n: int) -> Lemma22Result:
    """Compare (theta_n, nu theta_{n-1}) with the principal ideal (theta_n(f_alpha))."""
    _level_range(T, n)
    if not validate_tower(T, strict=True).ok:
        raise InvalidTower("strict tower relations fail")
    S = stabilize(T)
    two = two_generator_ideal(T, n)
    stab = IdealHandle(T.ctx, n, [S[n]])
    fwd = S[n] in two
    bwd = all(g in stab for g in two.generators)
    return Lemma22Result(fwd, bwd, fwd and bwd, T.na_holds())


def lemma22_certificate(T: ThetaTower, n: int) -> tuple[LayerElement, LayerElement]:
    """``(g_n, h_n)`` with ``theta_n = g_n theta_n(f_alpha)`` and ``nu theta_{n-1} = h_n theta_n(f_alpha)``.

    Needs (Na) so that 1 - 1/alpha is invertible at level 0; then
    g_k = alpha^k + alpha^{-1} nu(g_{k-1}).
    """
    _level_range(T, n)
    if not T.na_holds():
        raise HypothesisViolation("(Na) violated: a_p = 1 mod p")
    ctx = T.ctx
    alpha = unit_root(T.a_p)
    ainv = inv_unit(alpha)
    g = LayerElement.constant(ctx, 0, inv_unit(1 - ainv).value)
    h = None
    for k in range(1, n + 1):
        h = norm_map(g)
        g = LayerElement.constant(ctx, k, (alpha**k).value) + h * ainv
    return g, h


def lp_approx(S: StabilizedTower, n: int) -> LayerElement:
    """theta_n(f_alpha) * iota(theta_n(f_alpha)), the layer-n approximant of L_p."""
    _level_range(S, n, low=0)
    return S[n] * iota(S[n])


def functional_eq_holds(x: LayerElement) -> bool:
    return equals(IdealHandle(x.ctx, x.n, [x]), IdealHandle(x.ctx, x.n, [iota(x)]))


def check_functional_eq(S: StabilizedTower, n: int) -> bool:
    _level_range(S, n, low=0)
    return functional_eq_holds(S[n])


def mu_invariant(x: LayerElement) -> int:
    """Minimal coefficient valuation; ``M`` (displayed ``>=M``) for zero."""
    return min(x.ctx.valuation(c) for c in x.coeffs)


def gal_twist(x: LayerElement, k: int) -> LayerElement:
    """gamma^k * x, the ambiguity coming from the choice of Gross points."""
    return LayerElement.gamma(x.ctx, x.n, k) * x


@dataclass
class MainIdentityReport:
    n: int
    equal: bool
    principal: bool
    generator: Optional[LayerElement]
    two_generator: IdealHandle
    squared: IdealHandle
    fitting: IdealHandle

    @property
    def ok(self) -> bool:
        return self.equal and self.principal


def verify_main_identity(T: ThetaTower, n: int, P: PresentationMatrix) -> MainIdentityReport:
    """(theta_n, nu theta_{n-1})^2 == Fitt(P), and the squared ideal is principal."""
    _level_range(T, n)
    if not T.na_holds():
        raise HypothesisViolation("(Na) violated: a_p = 1 mod p")
    if not validate_tower(T, strict=True).ok:
        raise InvalidTower("strict tower relations fail")
    if P.ctx != T.ctx or P.n != n:
        raise LayerMismatch(f"presentation at layer {P.n}, identity checked at layer {n}")
    two = two_generator_ideal(T, n)
    sq = square(two)
    fitt = fitting_ideal(P)
    gen = is_principal(sq)
    return MainIdentityReport(n, equals(sq, fitt), gen is not None, gen, two, sq, fitt)
