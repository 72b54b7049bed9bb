"""JSON encoding of series, characteristic elements, modules and reports.

Large integers travel as decimal strings.  Decoders accept plain ints too.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from .assembler import EulerCorrection, FormulaReport
from .elliptic import CurveData, LocalPlaceData
from .koszul import AkashiResult, HomologyGroup, SigmaModule
from .modules import FiniteFormModule, PresentationModule
from .padic import PadicInt
from .series import CharElement, LambdaSeries, WeierstrassDecomposition, format_poly, leading_term_at_zero, ord_at_zero


def _ints(xs) -> List[int]:
    return [int(x) for x in xs]


def _strs(xs) -> List[str]:
    return [str(int(x)) for x in xs]


# --- series and characteristic elements -----------------------------------------------

def series_to_json(f: LambdaSeries) -> Dict[str, Any]:
    return {"p": f.p, "N": f.N, "D": f.D, "coeffs": _strs(f.ints)}


def series_from_json(obj, p: Optional[int] = None, N: Optional[int] = None, D: Optional[int] = None) -> LambdaSeries:
    if isinstance(obj, dict):
        p = obj.get("p", p)
        N = obj.get("N", N)
        coeffs = _ints(obj["coeffs"])
        D = obj.get("D", D) or max(len(coeffs), 1)
    elif isinstance(obj, (int, str)):
        coeffs = [int(obj)]
    else:
        coeffs = _ints(obj)
    if p is None or N is None:
        raise ValueError("series needs p and N (in the JSON or from --prime/--p-prec)")
    D = D or max(len(coeffs), 1)
    return LambdaSeries(int(p), int(N), int(D), coeffs)


def char_to_json(c: CharElement) -> Dict[str, Any]:
    out = {
        "p": c.prime,
        "N": c.precision,
        "mu": c.mu,
        "lambda": c.lam,
        "distinguished": _strs(c.distinguished),
        "poly": format_poly(c.distinguished),
    }
    return out


def char_from_json(obj, p: Optional[int] = None, N: Optional[int] = None) -> CharElement:
    p = int(obj.get("p", p))
    N = int(obj.get("N", N))
    return CharElement(p, N, int(obj.get("mu", 0)), tuple(_ints(obj.get("distinguished", ["1"]))))


def wprep_to_json(w: WeierstrassDecomposition, D: int) -> Dict[str, Any]:
    return {
        "mu": w.mu,
        "lambda": w.lam,
        "precision": w.precision,
        "distinguished": _strs(w.distinguished),
        "unit": series_to_json(w.unit),
    }


# --- modules -----------------------------------------------------------------------

def module_to_json(M) -> Dict[str, Any]:
    if isinstance(M, FiniteFormModule):
        return {"form": "finite", "p": M.p, "N": M.N, "k": M.k, "orders": list(M.orders),
                "theta": [list(r) for r in M.theta]}
    return {
        "form": "presentation", "p": M.p, "N": M.N, "D": M.D, "k": M.k,
        "P": [[_strs(a.ints) for a in row] for row in M.P],
    }


def module_from_json(obj, p: Optional[int] = None, N: Optional[int] = None, D: Optional[int] = None):
    p = int(obj.get("p", p))
    N = int(obj.get("N", N))
    form = obj.get("form", "presentation")
    if form == "finite":
        return FiniteFormModule(p, N, tuple(_ints(obj["orders"])), tuple(tuple(_ints(r)) for r in obj["theta"]))
    if form != "presentation":
        raise ValueError(f"unknown module form {form!r}")
    D = int(obj.get("D", D or 1))
    rows = obj["P"]
    k = int(obj.get("k", len(rows)))
    if not rows or not rows[0]:
        return PresentationModule.free_module(p, N, D, k)
    P = [[series_from_json(e, p, N, D) for e in row] for row in rows]
    D = max(D, max(e.D for row in P for e in row))
    P = [[e.reduce(D=D) for e in row] for row in P]
    return PresentationModule(p, N, D, tuple(map(tuple, P)), k, len(P[0]))


def _matrix_from_json(A, base):
    if isinstance(base, FiniteFormModule):
        return [_ints(r) for r in A]
    return [[series_from_json(e, base.p, base.N, base.D) for e in row] for row in A]


def sigma_from_json(obj, p=None, N=None, D=None) -> SigmaModule:
    base = module_from_json(obj, p, N, D)
    actions = [_matrix_from_json(A, base) for A in obj.get("actions", [])]
    if "d" in obj and int(obj["d"]) != len(actions):
        raise ValueError(f"d = {obj['d']} but {len(actions)} actions given")
    lifts = obj.get("action_lifts")
    if lifts is not None:
        lifts = [_matrix_from_json(Q, base) for Q in lifts]
    return SigmaModule.build(base, actions, lifts)


def homology_to_json(g: HomologyGroup) -> Dict[str, Any]:
    out = {"degree": g.degree, "char": char_to_json(g.char)}
    if g.truncated is not None:
        out["truncated"] = module_to_json(g.truncated)
    return out


def akashi_to_json(r: AkashiResult, homology: Optional[Sequence[HomologyGroup]] = None) -> Dict[str, Any]:
    out = {
        "homology_chars": [char_to_json(c) for c in r.homology_chars],
        "akashi": char_to_json(r.akashi),
        "ord_at_zero": r.ord_at_zero,
        "leading_valuation": r.leading_valuation,
    }
    if homology is not None:
        out["homology"] = [homology_to_json(g) for g in homology]
    return out


# --- elliptic data -------------------------------------------------------------------

def fraction_to_json(x: Fraction) -> Dict[str, str]:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def curve_from_json(obj) -> CurveData:
    return CurveData.from_list(_ints(obj["a"] if isinstance(obj, dict) else obj))


def place_from_json(obj) -> LocalPlaceData:
    a_v = obj.get("a_v")
    return LocalPlaceData(
        int(obj["ell"]),
        int(obj.get("f_deg", 1)),
        obj.get("reduction", "good"),
        None if a_v is None else int(a_v),
        int(obj.get("c_v", 0)),
    )


def place_to_json(v: LocalPlaceData) -> Dict[str, Any]:
    return {"ell": v.ell, "f_deg": v.f_deg, "reduction": v.reduction, "a_v": v.a_v, "c_v": v.c_v}


def r_place_from_json(obj, p: int, N: int):
    return PadicInt(p, N, int(obj["u"])), int(obj.get("c", obj.get("c_v", 0)))


# --- reports ---------------------------------------------------------------------------

def _leading_or_none(c: CharElement):
    try:
        return leading_term_at_zero(c)
    except Exception:
        return None


def report_to_json(rep: FormulaReport) -> Dict[str, Any]:
    if not rep.consistent():
        raise AssertionError("report is inconsistent with its factors")
    return {
        "rhs": char_to_json(rep.rhs),
        "r": rep.r,
        "ord_at_zero": rep.ord_at_zero,
        "leading_valuation": rep.leading_valuation,
        "factors": [
            {"label": label, "char": char_to_json(c), "ord_at_zero": ord_at_zero(c), "leading_valuation": _leading_or_none(c)}
            for label, c in rep.factors
        ],
        "assumptions": list(rep.assumptions),
        "notes": list(rep.notes),
    }


def report_table(rep: FormulaReport) -> str:
    rows = [("label", "mu", "distinguished", "ord@0", "lead val")]
    for label, c in rep.factors:
        rows.append((label, str(c.mu), format_poly(c.distinguished), str(ord_at_zero(c)), str(_leading_or_none(c))))
    rows.append(("= rhs", str(rep.rhs.mu), format_poly(rep.rhs.distinguished), str(rep.ord_at_zero), str(rep.leading_valuation)))
    widths = [max(len(r[i]) for r in rows) for i in range(5)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    if rep.assumptions:
        lines.append("assumed: " + ", ".join(rep.assumptions))
    lines.extend("note: " + n for n in rep.notes)
    return "\n".join(lines)


def euler_correction_to_json(e: EulerCorrection) -> Dict[str, Any]:
    return {"total": e.total, "l_factor_part": e.l_factor_part, "mu_part": e.mu_part, "notes": list(e.notes)}
