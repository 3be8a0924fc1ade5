"""Per-representation reports combining both computation routes."""

from __future__ import annotations

import math
from typing import Any

from . import closed_forms as cf
from .laurent import rational_equal_up_to_unit
from .representations import (
    DEFAULT_CONJ_PARAM,
    TorusRepParams,
    TwistRepParams,
    build_torus_rep,
    build_twist_rep,
    meridian_trace,
    riley_roots,
)
from .wada import TorsionUndefinedError, torsion_limit, twisted_alexander

_COMPLEX = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_POLY = {
    "type": "object",
    "required": ["minDegree", "coeffs"],
    "properties": {"minDegree": {"type": "integer"}, "coeffs": {"type": "array", "items": _COMPLEX}},
}
_RATIONAL = {"type": "object", "required": ["num", "den"], "properties": {"num": _POLY, "den": _POLY}}

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["knot", "representation", "delta_pipeline", "delta_closed", "unit", "torsion", "residuals"],
    "properties": {
        "knot": {"type": "object", "required": ["family", "label"]},
        "representation": {"type": "object", "required": ["column"]},
        "delta_pipeline": _RATIONAL,
        "delta_closed": {"oneOf": [_RATIONAL, {"type": "null"}]},
        "unit": {
            "oneOf": [
                {
                    "type": "object",
                    "required": ["sign", "power"],
                    "properties": {"sign": {"enum": [1, -1]}, "power": {"type": "integer"}},
                },
                {"type": "null"},
            ]
        },
        "torsion": {"oneOf": [_COMPLEX, {"type": "null"}]},
        "torsion_closed": {"oneOf": [_COMPLEX, {"type": "null"}]},
        "residuals": {"type": "object", "additionalProperties": {"type": ["number", "null"]}},
        "flags": {"type": "object"},
        "passed": {"type": "boolean"},
    },
}


def cjson(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _finite(x: float) -> float | None:
    return float(x) if math.isfinite(x) else None


def torus_report(
    p: int,
    q: int,
    k: int,
    l: int,
    conj_param: complex = DEFAULT_CONJ_PARAM,
    column: int | None = None,
    tol: float = 1e-8,
) -> dict[str, Any]:
    params = TorusRepParams(p, q, k, l, conj_param)
    rep = build_torus_rep(params)
    ta = twisted_alexander(rep, column)
    closed = cf.torus_delta_closed(p, q, k, l)
    unit = rational_equal_up_to_unit(closed, ta.delta, tol)
    tv = torsion_limit(ta)
    expected = cf.torus_torsion_closed(p, q, k, l)
    torsion_rel = abs(tv.value - expected) / abs(expected)
    return {
        "knot": {"family": "torus", "label": rep.presentation.label, "p": p, "q": q},
        "representation": {
            "k": k,
            "l": l,
            "conj_param": cjson(params.conj_param),
            "bezout": {"r": params.bezout_r, "s": params.bezout_s},
            "meridian_trace": cjson(meridian_trace(rep, params)),
            "column": ta.column,
        },
        "delta_pipeline": ta.delta.to_json(),
        "delta_closed": closed.to_json(),
        "unit": unit.to_json(),
        "torsion": cjson(tv.value),
        "torsion_closed": cjson(expected),
        "residuals": {
            "relation": rep.relation_residual(),
            "delta": unit.residual,
            "torsion_relative": torsion_rel,
            "torsion_imag": abs(tv.value.imag),
        },
        "flags": {"regular": tv.regular, "column_sign": ta.column_sign},
        "passed": bool(unit.equal and torsion_rel <= tol),
    }


def twist_report(n: int, s: complex, u: complex, root_index: int = 0, repeated: bool = False,
                 column: int | None = None, tol: float = 1e-8) -> dict[str, Any]:
    params = TwistRepParams(n, s, u)
    rep = build_twist_rep(params)
    ta = twisted_alexander(rep, column)
    singular = cf.twist_singular(params.x2, params.y)
    try:
        tv = torsion_limit(ta)
        torsion, regular = tv.value, True
    except TorsionUndefinedError:
        torsion, regular = None, False

    closed = unit = expected = None
    delta_res = torsion_rel = math.nan
    if not singular:
        closed = cf.twist_delta_closed(n, params.x2, params.y)
        unit = rational_equal_up_to_unit(closed, ta.delta, tol)
        delta_res = unit.residual
        expected = cf.twist_torsion_closed(n, params.x2, params.y)
        if torsion is not None:
            torsion_rel = abs(torsion - expected) / max(abs(expected), 1e-300)
    passed = singular or (unit.equal and (torsion is None or torsion_rel <= tol))
    return {
        "knot": {"family": "twist", "label": rep.presentation.label, "n": n},
        "representation": {
            "s": cjson(params.riley_s),
            "u": cjson(params.u),
            "root_index": root_index,
            "gamma": cjson(params.gamma),
            "x2": cjson(params.x2),
            "y": cjson(params.y),
            "column": ta.column,
        },
        "delta_pipeline": ta.delta.to_json(),
        "delta_closed": closed.to_json() if closed is not None else None,
        "unit": unit.to_json() if unit is not None else None,
        "torsion": cjson(torsion) if torsion is not None else None,
        "torsion_closed": cjson(expected) if expected is not None else None,
        "residuals": {
            "relation": rep.relation_residual(),
            "riley": params.riley_residual(),
            "delta": _finite(delta_res),
            "torsion_relative": _finite(torsion_rel),
        },
        "flags": {
            "closed_form_singular": singular,
            "repeated_root": repeated,
            "regular": regular,
            "column_sign": ta.column_sign,
        },
        "passed": bool(passed),
    }


def twist_reports(n: int, s: complex, root: int | None = None, column: int | None = None,
                  tol: float = 1e-8) -> list[dict[str, Any]]:
    roots = riley_roots(n, s)
    indices = range(len(roots)) if root is None else [root]
    out = []
    for i in indices:
        if not 0 <= i < len(roots):
            raise IndexError(f"root index {i} out of range; the Riley polynomial has {len(roots)} roots")
        r = roots[i]
        out.append(twist_report(n, s, r.u, i, r.repeated, column, tol))
    return out


def flatten(report: dict[str, Any]) -> dict[str, Any]:
    """One CSV row per report."""
    rep = report["representation"]
    knot = report["knot"]
    unit = report["unit"] or {}
    tors = report["torsion"] or [math.nan, math.nan]
    tclosed = report.get("torsion_closed") or [math.nan, math.nan]
    row = {
        "family": knot["family"],
        "label": knot["label"],
        "p": knot.get("p", ""),
        "q": knot.get("q", ""),
        "k": rep.get("k", ""),
        "l": rep.get("l", ""),
        "n": knot.get("n", ""),
        "s": _fmt_complex(rep["s"]) if "s" in rep else "",
        "u": _fmt_complex(rep["u"]) if "u" in rep else "",
        "root_index": rep.get("root_index", ""),
        "column": rep["column"],
        "unit_sign": unit.get("sign", ""),
        "unit_power": unit.get("power", ""),
        "torsion_re": tors[0],
        "torsion_im": tors[1],
        "torsion_closed_re": tclosed[0],
        "torsion_closed_im": tclosed[1],
    }
    for key, val in report["residuals"].items():
        row[f"residual_{key}"] = "" if val is None else val
    row["passed"] = report.get("passed", "")
    return row


def _fmt_complex(pair) -> str:
    z = complex(*pair)
    return f"{z.real:.17g}{z.imag:+.17g}i"


def format_pretty(report: dict[str, Any]) -> str:
    knot, rep = report["knot"], report["representation"]
    lines = [f"{knot['label']}"]
    if knot["family"] == "torus":
        lines.append(f"  component (k, l) = ({rep['k']}, {rep['l']}), v = {_fmt_complex(rep['conj_param'])}")
        lines.append(f"  tr rho(mu) = {_fmt_complex(rep['meridian_trace'])}")
    else:
        lines.append(f"  s = {_fmt_complex(rep['s'])}, root {rep['root_index']}: u = {_fmt_complex(rep['u'])}")
        lines.append(f"  gamma = {_fmt_complex(rep['gamma'])}, x^2 = {_fmt_complex(rep['x2'])}, y = {_fmt_complex(rep['y'])}")
    lines.append(f"  removed column j = {rep['column']}")
    if report["unit"] is not None:
        u = report["unit"]
        lines.append(f"  pipeline = {u['sign']:+d} t^{u['power']} x closed form (residual {report['residuals']['delta']:.2e})")
    else:
        lines.append("  closed form singular here; pipeline only")
    if report["torsion"] is not None:
        lines.append(f"  torsion (pipeline)    = {_fmt_complex(report['torsion'])}")
    else:
        lines.append("  torsion undefined (Delta has no simple zero at t = 1)")
    if report.get("torsion_closed") is not None:
        lines.append(f"  torsion (closed form) = {_fmt_complex(report['torsion_closed'])}")
    lines.append(f"  {'PASS' if report['passed'] else 'FAIL'}")
    return "\n".join(lines)

