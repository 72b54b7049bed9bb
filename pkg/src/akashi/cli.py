"""Command-line front end: JSON in, JSON out.

Exit codes: 0 success, 1 bad input, 2 precision error, 3 failed hypothesis
certificate (including a missing --assume).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from . import serialize as js
from .assembler import (
    assemble_gl2,
    assemble_main,
    euler_characteristic_details,
)
from .elliptic import count_points, euler_factor_at_one, fraction_valuation, local_correction_series
from .errors import AkashiError, CertificateError, PrecisionError
from .koszul import akashi_series, koszul_homology_all
from .modules import char_of, induce, PresentationModule
from .series import weierstrass_prepare

MAIN_HYPOTHESES = ("strongly-admissible", "reduction-R", "MH-sigma")
GL2_HYPOTHESES = ("MH-sigma", "no-cm")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep exit code 2 free for precision errors
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read(path: str) -> Any:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return json.loads(text)


def _require(args, key: str, flag: str):
    value = getattr(args, key)
    if value is None:
        raise UsageError(f"{flag} is required here")
    return value


def _check_assumptions(args, needed) -> List[str]:
    given = args.assume or []
    missing = [h for h in needed if h not in given]
    if missing:
        raise CertificateError(
            "the formula holds only under hypotheses the tool cannot check; pass "
            + " ".join(f"--assume {h}" for h in missing)
        )
    return sorted(set(given))


# --- subcommands ------------------------------------------------------------------------

def cmd_wprep(args) -> Dict[str, Any]:
    f = js.series_from_json(_read(args.input), args.prime, args.p_prec, args.t_deg)
    return js.wprep_to_json(weierstrass_prepare(f), f.D)


def cmd_char(args):
    M = js.module_from_json(_read(args.input), args.prime, args.p_prec, args.t_deg)
    return js.char_to_json(char_of(M))


def cmd_akashi(args):
    S = js.sigma_from_json(_read(args.input), args.prime, args.p_prec, args.t_deg)
    result = akashi_series(S)
    homology = koszul_homology_all(S, truncated=args.truncated) if args.truncated else None
    return js.akashi_to_json(result, homology)


def cmd_induce(args):
    M = js.module_from_json(_read(args.input), args.prime, args.p_prec, args.t_deg)
    if not isinstance(M, PresentationModule):
        raise UsageError("induce works on presentations")
    I = induce(M, args.c)
    return {"module": js.module_to_json(I), "char": js.char_to_json(char_of(I))}


def _places(obj) -> list:
    if isinstance(obj, dict) and "places" in obj:
        obj = obj["places"]
    return obj if isinstance(obj, list) else [obj]


def cmd_euler(args):
    obj = _read(args.input) if args.input else None
    if args.curve is not None:
        curve = js.curve_from_json(json.loads(args.curve))
        ells = args.ell or []
        out = []
        for ell in ells:
            n = count_points(curve, ell)
            value = euler_factor_at_one(js.place_from_json({"ell": ell, "a_v": ell + 1 - n}))
            out.append({"ell": ell, "points": n, "a_v": ell + 1 - n, "value": js.fraction_to_json(value),
                        "v_p": fraction_valuation(value, args.prime) if args.prime else None})
        return out
    out = []
    for rec in _places(obj):
        place = js.place_from_json(rec)
        value = euler_factor_at_one(place)
        out.append({"place": js.place_to_json(place), "value": js.fraction_to_json(value),
                    "v_p": fraction_valuation(value, args.prime) if args.prime else None})
    return out


def _precision(args):
    return _require(args, "prime", "--prime"), _require(args, "p_prec", "--p-prec"), args.t_deg or 4


def cmd_local_series(args):
    p, N, D = _precision(args)
    out = []
    for rec in _places(_read(args.input)):
        place = js.place_from_json(rec)
        ch = local_correction_series(place, p, N, D, args.frobenius_convention)
        out.append({"place": js.place_to_json(place), "char": js.char_to_json(ch)})
    return out


def cmd_assemble_main(args):
    assumed = _check_assumptions(args, MAIN_HYPOTHESES)
    obj = _read(args.input)
    f_cyc = js.char_from_json(obj["f_cyc"], args.prime, args.p_prec)
    locals_ = [js.char_from_json(c, f_cyc.prime, f_cyc.precision) for c in obj.get("locals", [])]
    return assemble_main(f_cyc, locals_, int(obj.get("r", 0)), assumed)


def cmd_assemble_gl2(args):
    assumed = _check_assumptions(args, GL2_HYPOTHESES)
    obj = _read(args.input)
    f_cyc = js.char_from_json(obj["f_cyc"], args.prime, args.p_prec)
    p, N = f_cyc.prime, f_cyc.precision
    M_places = [js.place_from_json(v) for v in obj.get("M_places", [])]
    R_places = [js.r_place_from_json(v, p, N) for v in obj.get("R_places", [])]
    return assemble_gl2(
        f_cyc, M_places, R_places, args.t_deg or 4, args.frobenius_convention, args.dual_convention, assumed
    )


def cmd_euler_char(args):
    p, N, _ = _precision(args)
    obj = _read(args.input)
    M_places = [js.place_from_json(v) for v in obj.get("M_places", [])]
    R_places = [js.r_place_from_json(v, p, N) for v in obj.get("R_places", [])]
    return js.euler_correction_to_json(euler_characteristic_details(M_places, R_places, p))


def cmd_oracle_fuzz(args):
    from .fuzz import run_fuzz

    r = run_fuzz(args.count, args.seed)
    return {"seed": r.seed, "checked": r.checked, "skipped": r.skipped, "failures": r.failures}


# --- parser ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="akashi", description="Characteristic elements and Akashi series over Z_p[[T]].")
    ap.add_argument("--prime", type=int, help="the prime p (when not given in the JSON)")
    ap.add_argument("--p-prec", type=int, help="p-adic precision N")
    ap.add_argument("--t-deg", type=int, help="T-adic truncation D")
    ap.add_argument("--frobenius-convention", choices=["arithmetic", "geometric"], default="arithmetic")
    ap.add_argument("--dual-convention", choices=["direct", "inverse"], default="direct")
    ap.add_argument("-o", "--output", help="write JSON here instead of stdout")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("input", nargs="?", default="-", help="JSON file ('-' for stdin)")
        sp.set_defaults(func=func)
        return sp

    add("wprep", cmd_wprep, "Weierstrass preparation of a series")
    add("char", cmd_char, "characteristic element of a module")
    sp = add("akashi", cmd_akashi, "Koszul homology and Akashi series of a Sigma-module")
    sp.add_argument("--truncated", action="store_true", help="also list the truncated homology groups")
    sp = add("induce", cmd_induce, "induce a module from Gamma' = Gamma^(p^c)")
    sp.add_argument("--c", type=int, required=True)
    sp = sub.add_parser("euler", help="Euler factors P_v(1/q) for places, or for a curve at primes")
    sp.add_argument("input", nargs="?", help="JSON list of places")
    sp.add_argument("--curve", help='curve JSON, e.g. \'{"a": [0,0,0,0,1]}\'')
    sp.add_argument("--ell", type=int, action="append", help="prime for --curve (repeatable)")
    sp.set_defaults(func=cmd_euler)
    add("local-series", cmd_local_series, "local correction characteristic elements")
    for name, func in (("assemble-main", cmd_assemble_main), ("assemble-gl2", cmd_assemble_gl2)):
        sp = add(name, func, f"assemble the {name.split('-')[1]} formula")
        sp.add_argument("--assume", action="append", help="record a hypothesis as assumed (repeatable)")
        sp.add_argument("--report", action="store_true", help="print an audit table instead of JSON")
    add("euler-char", cmd_euler_char, "Euler-characteristic correction (p-adic valuation)")
    sp = sub.add_parser("oracle-fuzz", help="cross-check random tiny instances against the brute-force oracle")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--count", type=int, default=50)
    sp.set_defaults(func=cmd_oracle_fuzz)
    return ap


def _emit(data, args) -> None:
    from .assembler import FormulaReport

    if isinstance(data, FormulaReport):
        if getattr(args, "report", False):
            print(js.report_table(data))
            if not args.output:
                return
        data = js.report_to_json(data)
    text = json.dumps(data, indent=2, sort_keys=True)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # usage errors and --help
        return e.code if isinstance(e.code, int) else 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        _emit(args.func(args), args)
    except PrecisionError as e:
        print(f"precision error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except CertificateError as e:
        print(f"certificate failure: {type(e).__name__}: {e}", file=sys.stderr)
        return 3
    except (AkashiError, UsageError, ValueError, KeyError, json.JSONDecodeError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    return 0


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
