"""Initial Fitting ideals of finitely presented Lambda_n^{(M)}-modules."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DataError, LayerMismatch
from .ideals import IdealHandle
from .layer import LayerElement, project_to
from .padic import PadicContext
from .zmod import minors


@dataclass(frozen=True)
class PresentationMatrix:
    """An r x s matrix presenting coker(Lambda_n^s -> Lambda_n^r)."""

    ctx: PadicContext
    n: int
    entries: tuple[tuple[LayerElement, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise DataError("presentation needs r >= 1 rows and at least one column")
        s = len(self.entries[0])
        for row in self.entries:
            if len(row) != s:
                raise DataError("ragged presentation matrix")
            for e in row:
                if e.ctx != self.ctx or e.n != self.n:
                    raise LayerMismatch(f"entry at layer {e.n}, presentation at layer {self.n}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[LayerElement]]) -> PresentationMatrix:
        first = rows[0][0]
        return cls(first.ctx, first.n, tuple(tuple(r) for r in rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])


def fitting_ideal(P: PresentationMatrix) -> IdealHandle:
    if P.cols < P.rows:
        return IdealHandle(P.ctx, P.n)
    return IdealHandle(P.ctx, P.n, minors(P.entries, P.rows))


def base_change(P: PresentationMatrix, m: int) -> PresentationMatrix:
    """Entrywise projection to layer ``m < n``."""
    if not 0 <= m < P.n:
        raise LayerMismatch(f"target layer {m} must be below {P.n}")
    return PresentationMatrix(
        P.ctx, m, tuple(tuple(project_to(e, m) for e in row) for row in P.entries)
    )


def block_diag(P: PresentationMatrix, Q: PresentationMatrix) -> PresentationMatrix:
    """Presentation of the direct sum of the two presented modules."""
    if P.ctx != Q.ctx or P.n != Q.n:
        raise LayerMismatch("block sum needs presentations over the same layer")
    z = LayerElement.zero(P.ctx, P.n)
    rows = [tuple(r) + (z,) * Q.cols for r in P.entries]
    rows += [(z,) * P.cols + tuple(r) for r in Q.entries]
    return PresentationMatrix(P.ctx, P.n, tuple(rows))


def diagonal(*elements: LayerElement) -> PresentationMatrix:
    x = elements[0]
    z = LayerElement.zero(x.ctx, x.n)
    k = len(elements)
    return PresentationMatrix.from_rows([[elements[i] if i == j else z for j in range(k)] for i in range(k)])
