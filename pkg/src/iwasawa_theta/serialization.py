"""JSON formats for towers, elements, ideals, presentations, curves and fields.

Coefficients are written as integers; on input, decimal strings are accepted
as well.  Every loader raises :class:`DataError` on malformed data.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .arithmetic import CurveSpec, FieldSpec
from .errors import DataError, IwasawaError
from .fitting import PresentationMatrix
from .ideals import IdealHandle
from .layer import LayerElement
from .padic import PadicContext
from .theta import StabilizedTower, ThetaTower


def load_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _int(x, what: str) -> int:
    if isinstance(x, bool):
        raise DataError(f"{what}: expected integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x, 10)
        except ValueError:
            pass
    raise DataError(f"{what}: expected integer, got {x!r}")


def _get(d: dict, key: str, what: str):
    if not isinstance(d, dict) or key not in d:
        raise DataError(f"{what}: missing key {key!r}")
    return d[key]


def context_from(d: dict, what: str) -> PadicContext:
    try:
        return PadicContext(_int(_get(d, "p", what), "p"), _int(_get(d, "M", what), "M"))
    except ValueError as exc:
        if isinstance(exc, IwasawaError):
            raise
        raise DataError(f"{what}: {exc}") from exc


def _coeff_list(x, what: str) -> list[int]:
    if not isinstance(x, list):
        raise DataError(f"{what}: expected a list of coefficients")
    return [_int(c, what) for c in x]


def element_to_json(x: LayerElement) -> dict:
    return {"n": x.n, "coeffs": list(x.coeffs)}


def element_from_json(d, ctx: PadicContext, what: str = "element") -> LayerElement:
    n = _int(_get(d, "n", what), f"{what}.n")
    if n < 0:
        raise DataError(f"{what}: negative layer")
    return LayerElement(ctx, n, _coeff_list(_get(d, "coeffs", what), f"{what}.coeffs"))


def tower_to_json(T: ThetaTower, seed=None) -> dict:
    out = {"p": T.ctx.p, "M": T.ctx.M, "ap": T.a_p.value, "levels": [list(t.coeffs) for t in T.levels]}
    if seed is not None:
        out["seed"] = seed
    return out


def tower_from_json(d) -> ThetaTower:
    ctx = context_from(d, "tower")
    a_p = ctx(_int(_get(d, "ap", "tower"), "ap"))
    levels = _get(d, "levels", "tower")
    if not isinstance(levels, list) or not levels:
        raise DataError("tower: levels must be a non-empty list")
    elems = tuple(LayerElement(ctx, n, _coeff_list(c, f"levels[{n}]")) for n, c in enumerate(levels))
    return ThetaTower(ctx, a_p, elems)


def stabilized_to_json(S: StabilizedTower) -> dict:
    return {"p": S.ctx.p, "M": S.ctx.M, "alpha": S.alpha.value, "levels": [list(t.coeffs) for t in S.levels]}


def ideal_to_json(I: IdealHandle) -> dict:
    return {
        "p": I.ctx.p,
        "M": I.ctx.M,
        "n": I.n,
        "generators": [list(g.coeffs) for g in I.generators],
        "howell": [list(r) for r in I.canonical.rows],
    }


def ideal_from_json(d) -> IdealHandle:
    ctx = context_from(d, "ideal")
    n = _int(_get(d, "n", "ideal"), "ideal.n")
    gens = _get(d, "generators", "ideal")
    if not isinstance(gens, list):
        raise DataError("ideal: generators must be a list")
    return IdealHandle(ctx, n, [LayerElement(ctx, n, _coeff_list(g, "generator")) for g in gens])


def standalone_element_from_json(d) -> LayerElement:
    ctx = context_from(d, "element")
    return element_from_json(d, ctx)


def presentation_to_json(P: PresentationMatrix) -> dict:
    return {
        "p": P.ctx.p,
        "M": P.ctx.M,
        "n": P.n,
        "rows": P.rows,
        "cols": P.cols,
        "entries": [[element_to_json(e) for e in row] for row in P.entries],
    }


def presentation_from_json(d) -> PresentationMatrix:
    ctx = context_from(d, "presentation")
    n = _int(_get(d, "n", "presentation"), "presentation.n")
    rows = _int(_get(d, "rows", "presentation"), "rows")
    cols = _int(_get(d, "cols", "presentation"), "cols")
    entries = _get(d, "entries", "presentation")
    if not isinstance(entries, list) or len(entries) != rows or rows < 1:
        raise DataError(f"presentation: expected {rows} rows of entries")
    out = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            raise DataError(f"presentation: row {i} must have {cols} entries")
        elems = [element_from_json(e, ctx, f"entries[{i}]") for e in row]
        if any(e.n != n for e in elems):
            raise DataError(f"presentation: row {i} has entries outside layer {n}")
        out.append(tuple(elems))
    return PresentationMatrix(ctx, n, tuple(out))


def curve_from_json(d) -> CurveSpec:
    keys = ("a1", "a2", "a3", "a4", "a6", "N")
    vals = [_int(_get(d, k, "curve"), k) for k in keys]
    label = d.get("label")
    try:
        return CurveSpec(*vals, label=label)
    except ValueError as exc:
        raise DataError(f"curve: {exc}") from exc


def field_from_json(d) -> FieldSpec:
    return FieldSpec(_int(_get(d, "D_K", "field"), "D_K"))
