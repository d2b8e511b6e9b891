"""Linear algebra over the chain ring Z/p^M.

The Howell normal form is the canonical basis of a row span: two matrices
span the same Z/p^M-submodule iff their Howell forms are identical.  Over a
chain ring every entry is ``unit * p^v``, which keeps the elimination simple:
the pivot of a column is any entry of minimal valuation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import DimensionMismatch, SizeTooLarge
from .padic import PadicContext, is_prime, vp


@dataclass(frozen=True)
class ChainRing:
    """Z/p^M for any prime p, including 2.

    Everything here only needs ``p``, ``M``, ``modulus`` and ``valuation``, so
    a :class:`PadicContext` can be used wherever a ChainRing is expected.
    """

    p: int
    M: int

    def __post_init__(self):
        if not is_prime(self.p) or self.M < 1:
            raise ValueError(f"Z/{self.p}^{self.M} is not a chain ring of prime-power order")

    @property
    def modulus(self) -> int:
        return self.p**self.M

    def valuation(self, x: int) -> int:
        return vp(x % self.modulus, self.p, self.M)


@dataclass(frozen=True)
class ZModMatrix:
    ctx: PadicContext | ChainRing
    rows: tuple[tuple[int, ...], ...]
    cols: int

    @classmethod
    def from_rows(cls, ctx: PadicContext | ChainRing, rows: Sequence[Sequence[int]], cols: int | None = None):
        mod = ctx.modulus
        rows = tuple(tuple(int(x) % mod for x in r) for r in rows)
        if cols is None:
            if not rows:
                raise DimensionMismatch("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("ragged matrix")
        return cls(ctx, rows, cols)

    @property
    def nrows(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class HowellBasis:
    """Row basis in Howell normal form, together with its pivot columns."""

    ctx: PadicContext | ChainRing
    rows: tuple[tuple[int, ...], ...]
    cols: int
    pivots: tuple[int, ...]

    def __len__(self):
        return len(self.rows)

    def log_order(self) -> int:
        """log_p of the number of elements in the span."""
        M = self.ctx.M
        return sum(M - self.ctx.valuation(r[j]) for r, j in zip(self.rows, self.pivots))

    def to_matrix(self) -> ZModMatrix:
        return ZModMatrix(self.ctx, self.rows, self.cols)


def howell(m: ZModMatrix) -> HowellBasis:
    ctx = m.ctx
    p, M, mod = ctx.p, ctx.M, ctx.modulus
    pending = [list(r) for r in m.rows if any(r)]
    basis: list[list[int]] = []
    pivots: list[int] = []

    for j in range(m.cols):
        if not pending:
            break
        best, best_v = None, M
        for idx, r in enumerate(pending):
            v = ctx.valuation(r[j])
            if v < best_v:
                best, best_v = idx, v
                if v == 0:
                    break
        if best is None:
            continue
        piv = pending.pop(best)
        # normalise the pivot to p^v
        u = pow(piv[j] // p**best_v, -1, mod)
        piv = [(u * x) % mod for x in piv]
        pv = piv[j]
        rest = []
        for r in pending:
            if r[j]:
                q = r[j] // pv
                r = [(a - q * b) % mod for a, b in zip(r, piv)]
            if any(r):
                rest.append(r)
        # saturation: p^{M-v} * pivot row has a zero in column j
        if best_v > 0:
            sat = [(x * p ** (M - best_v)) % mod for x in piv]
            if any(sat):
                rest.append(sat)
        pending = rest
        basis.append(piv)
        pivots.append(j)

    # reduce entries above each pivot into [0, pivot)
    for i, j in enumerate(pivots):
        pv = basis[i][j]
        for k in range(i):
            q = basis[k][j] // pv
            if q:
                basis[k] = [(a - q * b) % mod for a, b in zip(basis[k], basis[i])]

    return HowellBasis(ctx, tuple(tuple(r) for r in basis), m.cols, tuple(pivots))


def span_membership(b: HowellBasis, v: Sequence[int]) -> bool:
    if len(v) != b.cols:
        raise DimensionMismatch(f"vector of length {len(v)} vs {b.cols} columns")
    mod = b.ctx.modulus
    w = [int(x) % mod for x in v]
    for row, j in zip(b.rows, b.pivots):
        # every column before this pivot is already cleared or never pivots
        if any(w[:j]):
            return False
        if w[j]:
            pv = row[j]
            if w[j] % pv:
                return False
            q = w[j] // pv
            w = [(a - q * r) % mod for a, r in zip(w, row)]
    return not any(w)


def determinant(mat: Sequence[Sequence]):
    """Cofactor expansion along the first row; entries form a commutative ring."""
    k = len(mat)
    if k == 1:
        return mat[0][0]
    if k == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    total = None
    for j in range(k):
        sub = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * determinant(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def minors(mat: Sequence[Sequence], k: int) -> list:
    """All k x k minors, ordered lexicographically by (row subset, column subset)."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if k < 1 or k > min(rows, cols):
        raise SizeTooLarge(f"minor size {k} exceeds {rows}x{cols} matrix")
    out = []
    for rs in combinations(range(rows), k):
        for cs in combinations(range(cols), k):
            out.append(determinant([[list(mat[r])[c] for c in cs] for r in rs]))
    return out
