"""Ideals of Lambda_n^{(M)} through their coefficient lattices.

An ideal generated by ``g_1, ..., g_k`` is, as a Z/p^M-module, spanned by the
vectors ``X^i * g_j`` for ``0 <= i < p^n``.  Its Howell basis is therefore a
canonical form: ideal membership and equality reduce to linear algebra.

All statements hold in the finite ring Lambda_n mod p^M, not over Z_p.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Optional

from .errors import LayerMismatch
from .layer import LayerElement
from .padic import PadicContext
from .zmod import HowellBasis, ZModMatrix, howell, span_membership


class IdealHandle:
    def __init__(self, ctx: PadicContext, n: int, generators: Iterable[LayerElement] = ()):
        gens = tuple(generators)
        for g in gens:
            if g.ctx != ctx or g.n != n:
                raise LayerMismatch(f"generator at layer {g.n} over {g.ctx}, ideal at layer {n}")
        self.ctx = ctx
        self.n = n
        self.generators = gens

    @classmethod
    def of(cls, *generators: LayerElement) -> IdealHandle:
        if not generators:
            raise ValueError("use IdealHandle(ctx, n) for the zero ideal")
        g = generators[0]
        return cls(g.ctx, g.n, generators)

    @classmethod
    def unit(cls, ctx: PadicContext, n: int) -> IdealHandle:
        return cls(ctx, n, [LayerElement.one(ctx, n)])

    @cached_property
    def canonical(self) -> HowellBasis:
        rows = []
        for g in self.generators:
            for _ in range(g.size):
                if not g.is_zero():
                    rows.append(g.coeffs)
                g = g.times_X()
        size = self.ctx.p**self.n
        return howell(ZModMatrix(self.ctx, tuple(rows), size))

    def _check(self, other):
        if other.ctx != self.ctx or other.n != self.n:
            raise LayerMismatch(f"layer {self.n} over {self.ctx} vs layer {other.n} over {other.ctx}")

    def __contains__(self, x: LayerElement) -> bool:
        return contains(self, x)

    def __eq__(self, other):
        if not isinstance(other, IdealHandle):
            return NotImplemented
        return equals(self, other)

    def __hash__(self):
        return hash((self.ctx, self.n, self.canonical.rows))

    def __mul__(self, other: IdealHandle) -> IdealHandle:
        return product(self, other)

    def __repr__(self):
        return f"IdealHandle(n={self.n}, p={self.ctx.p}, M={self.ctx.M}, gens={[list(g.coeffs) for g in self.generators]})"

    def is_zero(self) -> bool:
        return len(self.canonical) == 0

    def log_order(self) -> int:
        """log_p of the cardinality of the ideal."""
        return self.canonical.log_order()

    def maximal_multiple(self) -> IdealHandle:
        """m*I for the maximal ideal m = (p, X)."""
        gens = []
        for g in self.generators:
            gens.append(g * self.ctx.p)
            gens.append(g.times_X())
        return IdealHandle(self.ctx, self.n, gens)

    def min_generators(self) -> int:
        """dim_{F_p} I/mI, the minimal number of generators (Nakayama)."""
        return self.log_order() - self.maximal_multiple().log_order()

    def image(self, m: int) -> IdealHandle:
        """Image under the surjection pi_{n,m}."""
        from .layer import project_to

        return IdealHandle(self.ctx, m, [project_to(g, m) for g in self.generators])


def contains(I: IdealHandle, x: LayerElement) -> bool:
    if x.ctx != I.ctx or x.n != I.n:
        raise LayerMismatch(f"element at layer {x.n}, ideal at layer {I.n}")
    return span_membership(I.canonical, x.coeffs)


def equals(I: IdealHandle, J: IdealHandle) -> bool:
    I._check(J)
    return I.canonical.rows == J.canonical.rows


def product(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    I._check(J)
    return IdealHandle(I.ctx, I.n, [g * h for g in I.generators for h in J.generators])


def square(I: IdealHandle) -> IdealHandle:
    return product(I, I)


def is_principal(I: IdealHandle) -> Optional[LayerElement]:
    """A single generator of ``I`` if one exists, else ``None``.

    Lambda_n^{(M)} is local with maximal ideal (p, X), so ``I`` is principal
    iff ``dim I/mI <= 1``; any generator outside ``mI`` then generates ``I``.
    """
    if I.is_zero():
        return LayerElement.zero(I.ctx, I.n)
    if I.min_generators() > 1:
        return None
    mI = I.maximal_multiple()
    for g in I.generators:
        if not contains(mI, g):
            return g
    raise AssertionError("nonzero ideal with every generator in mI")  # Nakayama
