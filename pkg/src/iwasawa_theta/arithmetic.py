"""Elliptic-curve and imaginary-quadratic context.

Point counts, quadratic characters, the conductor split N = N+ N-, the
hypothesis report, and the explicit local 2x2 matrices attached to the
Gross points.  The conductor is ingested, never computed.  (Im) and (Ram)
depend on the mod-p image of Galois and are reported as unchecked.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Optional

from .errors import BadReduction, NonIntegralNorm, NotSplit, RamifiedPrime
from .padic import PadicContext, is_prime, sqrt_hensel

MAX_COUNT_PRIME = 10_000


@dataclass(frozen=True)
class CurveSpec:
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    N: int
    label: Optional[str] = None

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("conductor must be >= 1")
        if self.discriminant == 0:
            raise ValueError("singular Weierstrass equation")

    @property
    def discriminant(self) -> int:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


@dataclass(frozen=True)
class FieldSpec:
    """K = Q(sqrt(-D_K)); validity is checked on demand, not at construction."""

    D_K: int

    def issues(self) -> list[str]:
        d = self.D_K
        out = []
        if d % 2 == 0:
            out.append("D_K is even")
        if d <= 4:
            out.append("D_K <= 4")
        if d % 4 != 3:
            out.append("-D_K is not 1 mod 4")
        if any(d % (q * q) == 0 for q in range(3, isqrt(d) + 1, 2)):
            out.append("D_K is not square-free")
        return out


@dataclass(frozen=True)
class ContextReport:
    p: int
    a_p: int
    ordinary: bool
    Na: bool
    Spl: bool
    Def: bool
    coprimality: bool
    Nplus: Optional[int]
    Nminus: Optional[int]
    field_ok: bool
    Im: str = "unchecked"
    Ram: str = "unchecked"

    @property
    def ok(self) -> bool:
        return all((self.ordinary, self.Na, self.Spl, self.Def, self.coprimality, self.field_ok))


def count_points_ap(c: CurveSpec, ell: int) -> int:
    """a_ell = ell + 1 - #E(F_ell), by enumerating the long Weierstrass equation."""
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    if ell > MAX_COUNT_PRIME:
        raise ValueError(f"naive point counting is capped at {MAX_COUNT_PRIME}")
    if c.N % ell == 0 or c.discriminant % ell == 0:
        raise BadReduction(f"{ell} divides the conductor or the discriminant")
    a1, a2, a3, a4, a6 = (x % ell for x in (c.a1, c.a2, c.a3, c.a4, c.a6))
    # number of y with y^2 + (a1 x + a3) y = rhs, tabulated over y once per x
    count = 1
    for x in range(ell):
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % ell
        lin = (a1 * x + a3) % ell
        count += sum(1 for y in range(ell) if (y * y + lin * y - rhs) % ell == 0)
    return ell + 1 - count


def kronecker(d: int, q: int) -> int:
    """Quadratic character (d/q) for a prime q (Kronecker's extension at q = 2)."""
    if d % q == 0:
        return 0
    if q == 2:
        return 1 if d % 8 in (1, 7) else -1
    return 1 if pow(d % q, (q - 1) // 2, q) == 1 else -1


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def split_conductor(N: int, D_K: int) -> tuple[int, int, bool]:
    """(N+, N-, defOk): split primes to N+, inert primes to N-."""
    plus = minus = 1
    inert_primes = 0
    squarefree = True
    for q, e in factorize(N).items():
        s = kronecker(-D_K, q)
        if s == 0:
            raise RamifiedPrime(f"{q} divides N and ramifies in Q(sqrt(-{D_K}))")
        if s == 1:
            plus *= q**e
        else:
            minus *= q**e
            inert_primes += 1
            squarefree = squarefree and e == 1
    return plus, minus, squarefree and inert_primes % 2 == 1


def check_hypotheses(c: CurveSpec, f: FieldSpec, p: int) -> ContextReport:
    a_p = count_points_ap(c, p)
    coprime = gcd(f.D_K, c.N * p) == 1
    if coprime:
        plus, minus, def_ok = split_conductor(c.N, f.D_K)
    else:
        plus = minus = None
        def_ok = False
    return ContextReport(
        p=p,
        a_p=a_p,
        ordinary=a_p % p != 0,
        Na=(a_p - 1) % p != 0,
        Spl=kronecker(-f.D_K, p) == 1,
        Def=def_ok,
        coprimality=coprime,
        Nplus=plus,
        Nminus=minus,
        field_ok=not f.issues(),
    )


def theta_trace_norm(f: FieldSpec) -> tuple[int, int]:
    """Reduced trace and norm of (D_K - sqrt(-D_K)) / 2."""
    d = f.D_K
    if (d * d + d) % 4:
        raise NonIntegralNorm(f"(D_K^2 + D_K)/4 is not integral for D_K = {d}")
    return d, (d * d + d) // 4


def local_embedding_matrix(f: FieldSpec) -> list[list[int]]:
    """i_q(theta): the companion matrix [[trd, -nrd], [1, 0]]."""
    t, nrd = theta_trace_norm(f)
    return [[t, -nrd], [1, 0]]


def local_j_matrix(f: FieldSpec) -> list[list[int]]:
    """i_q(J) / sqrt(quaternion_beta) = [[-1, trd], [0, 1]]."""
    t, _ = theta_trace_norm(f)
    return [[-1, t], [0, 1]]


def _matmul(A, B, mod=None):
    out = [[sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    if mod is not None:
        out = [[x % mod for x in row] for row in out]
    return out


def embedding_identities(f: FieldSpec) -> dict[str, bool]:
    """Integer identities satisfied by the local embedding of K into M_2.

    ``char_poly``: i(theta)^2 - trd i(theta) + nrd = 0.
    ``j_square``: (i(J)/sqrt(beta))^2 = 1, i.e. i(J)^2 = quaternion_beta.
    ``j_conjugation``: i(J) i(theta) = i(conj theta) i(J) with conj theta = trd - theta.
    """
    t, nrd = theta_trace_norm(f)
    A = local_embedding_matrix(f)
    J = local_j_matrix(f)
    A2 = _matmul(A, A)
    char = all(A2[i][j] - t * A[i][j] + (nrd if i == j else 0) == 0 for i in range(2) for j in range(2))
    J2 = _matmul(J, J)
    conj = [[(t if i == j else 0) - A[i][j] for j in range(2)] for i in range(2)]
    return {
        "char_poly": char,
        "j_square": J2 == [[1, 0], [0, 1]],
        "j_conjugation": _matmul(J, A) == _matmul(conj, J),
    }


def theta_mod(f: FieldSpec, ctx: PadicContext) -> tuple[int, int]:
    """(theta, conj theta) in Z/p^M for a prime p split in K."""
    if kronecker(-f.D_K, ctx.p) != 1:
        raise NotSplit(f"{ctx.p} does not split in Q(sqrt(-{f.D_K}))")
    s = sqrt_hensel(ctx(-f.D_K)).value
    half = ctx.inv(2)
    mod = ctx.modulus
    return (f.D_K - s) * half % mod, (f.D_K + s) * half % mod


def gross_point_matrix_p(f: FieldSpec, n: int, ctx: PadicContext) -> list[list[int]]:
    """[[theta, -1], [1, 0]] * diag(p^n, 1) over Z/p^M."""
    theta, _ = theta_mod(f, ctx)
    mod = ctx.modulus
    return _matmul([[theta, -1], [1, 0]], [[ctx.p**n % mod, 0], [0, 1]], mod)


def gross_point_matrix_split(f: FieldSpec, ctx: PadicContext) -> list[list[int]]:
    """(1/sqrt(-D_K)) [[theta, conj theta], [1, 1]] over Z/q^M for q | N+ split in K."""
    theta, conj = theta_mod(f, ctx)
    s = sqrt_hensel(ctx(-f.D_K)).value
    scale = ctx.inv(s)
    mod = ctx.modulus
    return [[theta * scale % mod, conj * scale % mod], [scale, scale]]
