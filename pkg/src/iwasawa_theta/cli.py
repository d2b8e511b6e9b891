"""Command-line interface.

Exit codes: 0 all verdicts true, 1 some verdict false, 2 usage error,
3 data error.  Reports are deterministic for identical inputs and flags.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import serialization as ser
from .arithmetic import check_hypotheses
from .errors import DataError, HypothesisViolation, IwasawaError
from .fitting import base_change, fitting_ideal
from .ideals import contains, equals, is_principal
from .layer import iota
from .padic import PadicContext, format_valuation, is_prime
from .theta import (
    check_functional_eq,
    check_norm_compat,
    generate_tower,
    lp_approx,
    mu_invariant,
    stabilize,
    validate_tower,
    verify_lemma_21,
    verify_lemma_22,
    verify_main_identity,
)

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3
CAVEAT = "verified in Λ_n mod p^M"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunConfig:
    command: str
    action: Optional[str] = None
    paths: dict = field(default_factory=dict)
    p: Optional[int] = None
    M: Optional[int] = None
    n: Optional[int] = None
    N: Optional[int] = None
    m: Optional[int] = None
    ap: Optional[int] = None
    seed: Optional[int] = None
    strict: bool = False
    out: Optional[str] = None
    json: bool = False


def _odd_prime(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if v < 3 or not is_prime(v):
        raise argparse.ArgumentTypeError(f"p must be an odd prime, got {v}")
    return v


def _positive(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as JSON")

    parser = _Parser(prog="iwasawa-theta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check-hypotheses", parents=[common])
    c.add_argument("--curve", required=True)
    c.add_argument("--field", required=True)
    c.add_argument("--p", type=_odd_prime, required=True)

    g = sub.add_parser("gen-tower", parents=[common])
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--p", type=_odd_prime, required=True)
    g.add_argument("--M", type=_positive, required=True)
    g.add_argument("--N", type=_nonneg, required=True)
    g.add_argument("--ap", type=int, required=True)
    g.add_argument("--out")

    t = sub.add_parser("theta")
    tsub = t.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("validate", "stabilize", "lemma21", "lemma22", "fe", "lp", "mu"):
        a = tsub.add_parser(name, parents=[common])
        a.add_argument("--in", dest="tower", required=True)
        a.add_argument("--n", type=_nonneg)
        a.add_argument("--strict", action="store_true")
        if name == "stabilize":
            a.add_argument("--out")

    i = sub.add_parser("ideal")
    isub = i.add_subparsers(dest="action", required=True, parser_class=_Parser)
    a = isub.add_parser("eq", parents=[common])
    a.add_argument("--a", required=True)
    a.add_argument("--b", required=True)
    a = isub.add_parser("contains", parents=[common])
    a.add_argument("--ideal", required=True)
    a.add_argument("--element", required=True)
    a = isub.add_parser("principal", parents=[common])
    a.add_argument("--ideal", required=True)

    f = sub.add_parser("fitting", parents=[common])
    f.add_argument("--in", dest="presentation", required=True)

    b = sub.add_parser("base-change", parents=[common])
    b.add_argument("--in", dest="presentation", required=True)
    b.add_argument("--m", type=_nonneg, required=True)
    b.add_argument("--out")

    mi = sub.add_parser("main-identity", parents=[common])
    mi.add_argument("--tower", required=True)
    mi.add_argument("--presentation", required=True)
    mi.add_argument("--n", type=_nonneg)
    return parser


_PATH_KEYS = ("curve", "field", "tower", "a", "b", "ideal", "element", "presentation")


def parse_args(argv) -> RunConfig:
    ns = build_parser().parse_args(list(argv))
    d = vars(ns)
    return RunConfig(
        command=ns.command,
        action=d.get("action"),
        paths={k: d[k] for k in _PATH_KEYS if d.get(k) is not None},
        p=d.get("p"),
        M=d.get("M"),
        n=d.get("n"),
        N=d.get("N"),
        m=d.get("m"),
        ap=d.get("ap"),
        seed=d.get("seed"),
        strict=d.get("strict", False),
        out=d.get("out"),
        json=d.get("json", False),
    )


def _header(cfg: RunConfig, p, M, n, seed=None) -> dict:
    name = cfg.command if cfg.action is None else f"{cfg.command} {cfg.action}"
    return {
        "command": name,
        "p": p,
        "M": M,
        "n": n,
        "seed": seed if seed is not None else cfg.seed,
        "precision": f"{CAVEAT} (p={p}, M={M}, n={n})",
    }


def _basis(I) -> list:
    return [list(r) for r in I.canonical.rows]


def _theta(cfg: RunConfig):
    raw = ser.load_json(cfg.paths["tower"])
    T = ser.tower_from_json(raw)
    n = T.N if cfg.n is None else cfg.n
    rep = _header(cfg, T.ctx.p, T.ctx.M, n, raw.get("seed"))
    rep["ap"] = T.a_p.value
    rep["N"] = T.N
    rep["strict"] = cfg.strict
    rep["Na"] = T.na_holds()
    if n > T.N:
        raise DataError(f"--n {n} exceeds tower height {T.N}")
    act = cfg.action

    if act == "validate":
        r = validate_tower(T, strict=cfg.strict)
        rep["checks"] = [{"check": c.name, "level": c.level, "ok": c.ok} for c in r.checks]
        rep["verdict"] = r.ok
    elif act == "stabilize":
        S = stabilize(T)
        r = check_norm_compat(S)
        rep["alpha"] = S.alpha.value
        rep["stabilized"] = ser.stabilized_to_json(S)
        rep["checks"] = [{"check": c.name, "level": c.level, "ok": c.ok} for c in r.checks]
        rep["verdict"] = r.ok
        if cfg.out:
            Path(cfg.out).write_text(ser.dumps(ser.stabilized_to_json(S)) + "\n")
    elif act == "lemma21":
        r = validate_tower(T, strict=False)
        if not r.ok:
            rep["error"] = "invalid tower: three-term relation fails"
            rep["verdict"] = False
        else:
            rep["verdict"] = verify_lemma_21(T, n)
    elif act == "lemma22":
        r = validate_tower(T, strict=True)
        if not r.ok:
            rep["error"] = "invalid tower: strict relations fail"
            rep["verdict"] = False
        else:
            res = verify_lemma_22(T, n)
            rep.update(inclusion_fwd=res.inclusion_fwd, inclusion_bwd=res.inclusion_bwd, equal=res.equal)
            if not res.na_holds:
                rep["warning"] = "(Na) violated: equality not asserted"
            rep["verdict"] = res.equal and res.inclusion_fwd
    elif act == "fe":
        S = stabilize(T)
        rep["verdict"] = check_functional_eq(S, n)
    elif act == "lp":
        S = stabilize(T)
        L = lp_approx(S, n)
        rep["lp"] = list(L.coeffs)
        rep["iota_fixed"] = iota(L) == L
        rep["verdict"] = rep["iota_fixed"]
    elif act == "mu":
        S = stabilize(T)
        L = lp_approx(S, n)
        M = T.ctx.M
        rep["mu_theta"] = format_valuation(mu_invariant(T[n]), M)
        rep["mu_theta_stabilized"] = format_valuation(mu_invariant(S[n]), M)
        rep["mu_lp"] = format_valuation(mu_invariant(L), M)
        rep["verdict"] = mu_invariant(L) == 0
    return rep


def _ideal(cfg: RunConfig):
    if cfg.action == "eq":
        I = ser.ideal_from_json(ser.load_json(cfg.paths["a"]))
        J = ser.ideal_from_json(ser.load_json(cfg.paths["b"]))
        rep = _header(cfg, I.ctx.p, I.ctx.M, I.n)
        rep["howell_a"], rep["howell_b"] = _basis(I), _basis(J)
        rep["verdict"] = equals(I, J)
    elif cfg.action == "contains":
        I = ser.ideal_from_json(ser.load_json(cfg.paths["ideal"]))
        x = ser.standalone_element_from_json(ser.load_json(cfg.paths["element"]))
        rep = _header(cfg, I.ctx.p, I.ctx.M, I.n)
        rep["howell"] = _basis(I)
        rep["verdict"] = contains(I, x)
    else:
        I = ser.ideal_from_json(ser.load_json(cfg.paths["ideal"]))
        rep = _header(cfg, I.ctx.p, I.ctx.M, I.n)
        g = is_principal(I)
        rep["howell"] = _basis(I)
        rep["min_generators"] = I.min_generators()
        rep["generator"] = None if g is None else list(g.coeffs)
        rep["verdict"] = g is not None
    return rep


def _run(cfg: RunConfig) -> dict:
    cmd = cfg.command
    if cmd == "check-hypotheses":
        curve = ser.curve_from_json(ser.load_json(cfg.paths["curve"]))
        fld = ser.field_from_json(ser.load_json(cfg.paths["field"]))
        r = check_hypotheses(curve, fld, cfg.p)
        rep = _header(cfg, cfg.p, None, None)
        rep.update(
            label=curve.label, N=curve.N, D_K=fld.D_K, ap=r.a_p, ordinary=r.ordinary, Na=r.Na,
            Spl=r.Spl, Def=r.Def, coprimality=r.coprimality, field_ok=r.field_ok,
            Nplus=r.Nplus, Nminus=r.Nminus, Im=r.Im, Ram=r.Ram, verdict=r.ok,
        )
        return rep
    if cmd == "gen-tower":
        ctx = PadicContext(cfg.p, cfg.M)
        T = generate_tower(cfg.seed, ctx, cfg.N, cfg.ap)
        data = ser.tower_to_json(T, seed=cfg.seed)
        rep = _header(cfg, cfg.p, cfg.M, cfg.N)
        if cfg.out:
            Path(cfg.out).write_text(ser.dumps(data) + "\n")
            rep["written"] = cfg.out
        else:
            rep["tower"] = data
        rep["verdict"] = validate_tower(T, strict=True).ok
        return rep
    if cmd == "theta":
        return _theta(cfg)
    if cmd == "ideal":
        return _ideal(cfg)
    if cmd == "fitting":
        P = ser.presentation_from_json(ser.load_json(cfg.paths["presentation"]))
        F = fitting_ideal(P)
        rep = _header(cfg, P.ctx.p, P.ctx.M, P.n)
        rep["generators"] = [list(g.coeffs) for g in F.generators]
        rep["howell"] = _basis(F)
        rep["principal"] = is_principal(F) is not None
        rep["verdict"] = True
        return rep
    if cmd == "base-change":
        P = ser.presentation_from_json(ser.load_json(cfg.paths["presentation"]))
        Q = base_change(P, cfg.m)
        lhs = fitting_ideal(P).image(cfg.m)
        rhs = fitting_ideal(Q)
        rep = _header(cfg, P.ctx.p, P.ctx.M, P.n)
        rep["target"] = cfg.m
        rep["howell_image_of_fitting"] = _basis(lhs)
        rep["howell_fitting_of_image"] = _basis(rhs)
        rep["verdict"] = equals(lhs, rhs)
        if cfg.out:
            Path(cfg.out).write_text(ser.dumps(ser.presentation_to_json(Q)) + "\n")
        else:
            rep["presentation"] = ser.presentation_to_json(Q)
        return rep
    if cmd == "main-identity":
        raw = ser.load_json(cfg.paths["tower"])
        T = ser.tower_from_json(raw)
        P = ser.presentation_from_json(ser.load_json(cfg.paths["presentation"]))
        n = P.n if cfg.n is None else cfg.n
        rep = _header(cfg, T.ctx.p, T.ctx.M, n, raw.get("seed"))
        try:
            r = verify_main_identity(T, n, P)
        except HypothesisViolation as exc:
            rep["error"] = str(exc)
            rep["verdict"] = False
            return rep
        rep["howell_two_generator"] = _basis(r.two_generator)
        rep["howell_squared"] = _basis(r.squared)
        rep["howell_fitting"] = _basis(r.fitting)
        rep["equal"] = r.equal
        rep["principal"] = r.principal
        rep["generator"] = None if r.generator is None else list(r.generator.coeffs)
        rep["summary"] = ("equal" if r.equal else "not equal") + ", " + ("principal" if r.principal else "not principal")
        rep["verdict"] = r.ok
        return rep
    raise UsageError(f"unknown command {cmd!r}")


def execute(cfg: RunConfig) -> tuple[int, dict]:
    try:
        rep = _run(cfg)
    except (DataError, IwasawaError) as exc:
        return EXIT_DATA, {"command": cfg.command, "error": f"{type(exc).__name__}: {exc}",
                           "precision": CAVEAT, "verdict": None}
    return (EXIT_OK if rep["verdict"] else EXIT_FALSE), rep


def _render_text(rep: dict) -> str:
    lines = []
    for key, value in rep.items():
        if isinstance(value, (dict, list)):
            lines.append(f"{key}: {ser.json.dumps(value, sort_keys=True)}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    code, rep = execute(cfg)
    print(ser.dumps(rep) if cfg.json else _render_text(rep))
    return code


if __name__ == "__main__":
    sys.exit(main())
