"""The finite-layer Iwasawa algebra (Z/p^M)[X]/((1+X)^{p^n} - 1).

Elements are stored in the polynomial basis ``X^i``; the group generator is
``gamma = 1 + X``.  The structure maps are

* ``project``   pi_{n,n-1}: gamma_n -> gamma_{n-1}, i.e. reduction mod omega_{n-1};
* ``norm_map``  nu_{n-1,n}: sigma -> sum of its pi-preimages;
* ``iota``      gamma -> gamma^{-1}.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .errors import BottomLayer, DataError, LayerMismatch
from .padic import PadicContext, PadicScalar


@lru_cache(maxsize=None)
def _binomials(N: int, mod: int) -> tuple[tuple[int, ...], ...]:
    # row k = C(k, i) mod `mod` for i <= k < N
    return tuple(tuple(comb(k, i) % mod for i in range(k + 1)) for k in range(N))


@lru_cache(maxsize=None)
def _omega_tail(N: int, mod: int) -> tuple[int, ...]:
    # X^N = -sum_{k=1}^{N-1} C(N, k) X^k  modulo omega = (1+X)^N - 1
    return tuple((-comb(N, k)) % mod for k in range(N))


def _reduce(coeffs: list[int], N: int, mod: int) -> list[int]:
    """Reduce a coefficient list modulo ``(1+X)^N - 1`` into length ``N``."""
    c = [x % mod for x in coeffs]
    if len(c) <= N:
        return c + [0] * (N - len(c))
    tail = _omega_tail(N, mod)
    for d in range(len(c) - 1, N - 1, -1):
        top = c[d]
        if top:
            base = d - N
            for k in range(1, N):
                t = tail[k]
                if t:
                    c[base + k] = (c[base + k] + top * t) % mod
            c[d] = 0
    return c[:N]


class LayerElement:
    """Element of Lambda_n^{(M)} with coefficients in the basis X^i."""

    __slots__ = ("ctx", "n", "coeffs", "_hash")

    def __init__(self, ctx: PadicContext, n: int, coeffs: Iterable[int]):
        if n < 0:
            raise ValueError("layer index must be >= 0")
        mod = ctx.modulus
        c = tuple(int(x) % mod for x in coeffs)
        size = ctx.p**n
        if len(c) != size:
            raise DataError(f"layer {n} needs {size} coefficients, got {len(c)}")
        self.ctx = ctx
        self.n = n
        self.coeffs = c
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, ctx: PadicContext, n: int) -> LayerElement:
        return cls(ctx, n, [0] * ctx.p**n)

    @classmethod
    def constant(cls, ctx: PadicContext, n: int, c: int) -> LayerElement:
        coeffs = [0] * ctx.p**n
        coeffs[0] = int(c)
        return cls(ctx, n, coeffs)

    @classmethod
    def one(cls, ctx: PadicContext, n: int) -> LayerElement:
        return cls.constant(ctx, n, 1)

    @classmethod
    def X(cls, ctx: PadicContext, n: int) -> LayerElement:
        return cls.from_poly(ctx, n, [0, 1])

    @classmethod
    def gamma(cls, ctx: PadicContext, n: int, k: int = 1) -> LayerElement:
        """The group element gamma^k, k taken modulo p^n."""
        size = ctx.p**n
        g = [0] * size
        g[k % size] = 1
        return from_group(ctx, n, g)

    @classmethod
    def from_poly(cls, ctx: PadicContext, n: int, coeffs: Sequence[int]) -> LayerElement:
        """Any polynomial in X, reduced modulo omega_n."""
        return cls(ctx, n, _reduce(list(coeffs), ctx.p**n, ctx.modulus))

    # arithmetic

    def _check(self, other: LayerElement):
        if not isinstance(other, LayerElement):
            raise TypeError(f"expected LayerElement, got {type(other).__name__}")
        if other.ctx != self.ctx or other.n != self.n:
            raise LayerMismatch(
                f"layer {self.n} over {self.ctx} vs layer {other.n} over {other.ctx}"
            )

    def __add__(self, other):
        if isinstance(other, (int, PadicScalar)):
            other = LayerElement.constant(self.ctx, self.n, int(other))
        self._check(other)
        return LayerElement(self.ctx, self.n, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, PadicScalar)):
            other = LayerElement.constant(self.ctx, self.n, int(other))
        self._check(other)
        return LayerElement(self.ctx, self.n, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return -self + other

    def __neg__(self):
        return LayerElement(self.ctx, self.n, (-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, PadicScalar)):
            s = int(other)
            return LayerElement(self.ctx, self.n, (s * a for a in self.coeffs))
        if isinstance(other, LayerElement):
            return mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, PadicScalar)):
            return self * other
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined in general")
        result = LayerElement.one(self.ctx, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, LayerElement):
            return NotImplemented
        return self.ctx == other.ctx and self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.n, self.coeffs))
        return self._hash

    def __repr__(self):
        return f"LayerElement(p={self.ctx.p}, M={self.ctx.M}, n={self.n}, {list(self.coeffs)})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else f"{c}*X^{i}" if i > 1 else f"{c}*X")
        return " + ".join(terms) or "0"

    # helpers

    @property
    def size(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def times_X(self) -> LayerElement:
        return LayerElement(self.ctx, self.n, _reduce([0, *self.coeffs], self.size, self.ctx.modulus))

    def lift(self) -> LayerElement:
        """A preimage under pi_{n+1,n}: the same polynomial read one layer up."""
        size = self.ctx.p ** (self.n + 1)
        return LayerElement(self.ctx, self.n + 1, list(self.coeffs) + [0] * (size - self.size))

    def group_coeffs(self) -> tuple[int, ...]:
        return to_group(self)


def mul(a: LayerElement, b: LayerElement) -> LayerElement:
    """Schoolbook product followed by reduction modulo omega_n."""
    a._check(b)
    mod = a.ctx.modulus
    N = a.size
    prod = [0] * (2 * N - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                if y:
                    prod[i + j] += x * y
    return LayerElement(a.ctx, a.n, _reduce(prod, N, mod))


def to_group(a: LayerElement) -> tuple[int, ...]:
    """Coefficients in the group basis gamma^k, using X = gamma - 1."""
    N, mod = a.size, a.ctx.modulus
    binom = _binomials(N, mod)
    out = [0] * N
    for i, c in enumerate(a.coeffs):
        if c:
            row = binom[i]
            for k in range(i + 1):
                term = c * row[k]
                out[k] += -term if (i - k) & 1 else term
    return tuple(x % mod for x in out)


def from_group(ctx: PadicContext, n: int, g: Sequence[int]) -> LayerElement:
    """Inverse of :func:`to_group`: gamma^k = (1+X)^k = sum C(k, i) X^i."""
    N, mod = ctx.p**n, ctx.modulus
    if len(g) != N:
        raise DataError(f"layer {n} needs {N} group coefficients, got {len(g)}")
    binom = _binomials(N, mod)
    out = [0] * N
    for k, c in enumerate(g):
        if c:
            row = binom[k]
            for i in range(k + 1):
                out[i] += c * row[i]
    return LayerElement(ctx, n, out)


def iota(a: LayerElement) -> LayerElement:
    g = to_group(a)
    N = len(g)
    return from_group(a.ctx, a.n, [g[-k % N] for k in range(N)])


def project(a: LayerElement) -> LayerElement:
    """pi_{n,n-1}; the kernel is generated by omega_{n-1}."""
    if a.n == 0:
        raise BottomLayer("cannot project below layer 0")
    N = a.ctx.p ** (a.n - 1)
    return LayerElement(a.ctx, a.n - 1, _reduce(list(a.coeffs), N, a.ctx.modulus))


def project_to(a: LayerElement, m: int) -> LayerElement:
    """Composite projection pi_{n,m} for m <= n."""
    if m > a.n or m < 0:
        raise LayerMismatch(f"cannot project layer {a.n} to layer {m}")
    while a.n > m:
        a = project(a)
    return a


def norm_map(a: LayerElement) -> LayerElement:
    """nu_{n-1,n}: gamma_{n-1}^k -> sum_j gamma_n^{k + j p^{n-1}}."""
    ctx = a.ctx
    g = to_group(a)
    low = len(g)
    out = [0] * (low * ctx.p)
    for k, c in enumerate(g):
        if c:
            for j in range(ctx.p):
                out[k + j * low] = c
    return from_group(ctx, a.n + 1, out)


def norm_to(a: LayerElement, n: int) -> LayerElement:
    """nu_{m,n} as the composite of one-step norm maps (identity when m = n)."""
    if n < a.n:
        raise LayerMismatch(f"cannot norm layer {a.n} up to layer {n}")
    while a.n < n:
        a = norm_map(a)
    return a


def omega(ctx: PadicContext, n: int, m: int) -> LayerElement:
    """omega_n = (1+X)^{p^n} - 1 as an element of layer m >= n."""
    if m < n:
        raise LayerMismatch(f"omega_{n} lives in layers m >= {n}, got {m}")
    N = ctx.p**n
    return LayerElement.from_poly(ctx, m, [0] + [comb(N, k) for k in range(1, N + 1)])
