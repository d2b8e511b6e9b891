"""Arithmetic in Z/p^M with p-adic valuation semantics.

Values are plain Python integers reduced into ``[0, p^M)``.  The zero element
has valuation ``M`` by convention since finite precision cannot tell ``0``
apart from ``p^M * unit``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import NonOrdinary, NonResidue, NotAUnit


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def vp(x: int, p: int, cap: int) -> int:
    """p-adic valuation of the integer ``x``, capped at ``cap``."""
    if x == 0:
        return cap
    v = 0
    while v < cap and x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class PadicContext:
    p: int
    M: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p) or self.p < 3:
            raise ValueError(f"p must be an odd prime, got {self.p!r}")
        if not isinstance(self.M, int) or self.M < 1:
            raise ValueError(f"precision M must be >= 1, got {self.M!r}")

    @cached_property
    def modulus(self) -> int:
        return self.p**self.M

    def __call__(self, value: int) -> PadicScalar:
        return PadicScalar(self, value)

    def valuation(self, x: int) -> int:
        return vp(x % self.modulus, self.p, self.M)

    def inv(self, x: int) -> int:
        x %= self.modulus
        if x % self.p == 0:
            raise NotAUnit(f"{x} is not a unit modulo {self.p}^{self.M}")
        return pow(x, -1, self.modulus)

    def __str__(self):
        return f"Z/{self.p}^{self.M}"


class PadicScalar:
    """An element of Z/p^M."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: PadicContext, value: int):
        self.ctx = ctx
        self.value = int(value) % ctx.modulus

    def _coerce(self, other) -> int:
        if isinstance(other, PadicScalar):
            if other.ctx != self.ctx:
                raise ValueError(f"context mismatch: {self.ctx} vs {other.ctx}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PadicScalar(self.ctx, self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PadicScalar(self.ctx, self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PadicScalar(self.ctx, o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PadicScalar(self.ctx, self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return PadicScalar(self.ctx, -self.value)

    def __pow__(self, e: int):
        if e < 0:
            return inv_unit(self) ** (-e)
        return PadicScalar(self.ctx, pow(self.value, e, self.ctx.modulus))

    def __eq__(self, other):
        if isinstance(other, PadicScalar):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, int):
            return (other - self.value) % self.ctx.modulus == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.value))

    def __int__(self):
        return self.value

    __index__ = __int__

    def __repr__(self):
        return f"PadicScalar({self.value} mod {self.ctx.p}^{self.ctx.M})"

    def __str__(self):
        return str(self.value)

    @property
    def valuation(self) -> int:
        return self.ctx.valuation(self.value)

    def is_unit(self) -> bool:
        return self.value % self.ctx.p != 0

    def is_zero(self) -> bool:
        return self.value == 0


def format_valuation(v: int, M: int) -> str:
    """Display form of a valuation: the cap ``M`` is shown as ``>=M``."""
    return f">={M}" if v >= M else str(v)


def inv_unit(x: PadicScalar) -> PadicScalar:
    return PadicScalar(x.ctx, x.ctx.inv(x.value))


def _hensel(f, df, seed: int, ctx: PadicContext) -> int:
    # Newton iteration; precision doubles each step.
    r = seed
    prec = 1
    while prec < ctx.M:
        prec = min(2 * prec, ctx.M)
        mod = ctx.p**prec
        r = (r - f(r) * pow(df(r), -1, mod)) % mod
    return r % ctx.modulus


def unit_root(a_p: PadicScalar) -> PadicScalar:
    """Unit root alpha of ``X^2 - a_p X + p`` in Z/p^M.

    Modulo p the polynomial factors as ``X (X - a_p)`` so the unit root is the
    Hensel lift of ``a_p``.  The other root ``beta = a_p - alpha`` satisfies
    ``alpha * beta = p`` and has valuation 1 (when M >= 2).
    """
    ctx = a_p.ctx
    if not a_p.is_unit():
        raise NonOrdinary(f"a_p = {a_p.value} is divisible by p = {ctx.p}")
    a, p = a_p.value, ctx.p
    r = _hensel(lambda x: x * x - a * x + p, lambda x: 2 * x - a, a % p, ctx)
    return PadicScalar(ctx, r)


def hecke_beta(a_p: PadicScalar) -> PadicScalar:
    """The non-unit root ``a_p - alpha`` of the Hecke polynomial."""
    return a_p - unit_root(a_p)


def sqrt_hensel(d: PadicScalar) -> PadicScalar:
    """Square root of a unit quadratic residue; the smaller lift is returned."""
    ctx = d.ctx
    if not d.is_unit():
        raise NotAUnit(f"{d.value} is not a unit modulo {ctx.p}")
    p = ctx.p
    seed = next((r for r in range(1, p) if (r * r - d.value) % p == 0), None)
    if seed is None:
        raise NonResidue(f"{d.value} is not a square modulo {p}")
    r = _hensel(lambda x: x * x - d.value, lambda x: 2 * x, seed, ctx)
    return PadicScalar(ctx, min(r, ctx.modulus - r))
