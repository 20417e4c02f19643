"""Command-line front end.

Subcommands: encode, decode, encode-poles, decode-poles, simulate, bounds,
mindist, check-constraint, report.  Exit codes: 0 success, 1 decode failure
or failed verdict, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .bounds import (bound_thm1, bound_thm1_poles, bound_thm2,
                     bound_thm2_poles)
from .code import (CodeParams, FractionVector, encode, min_distance_bruteforce,
                   word_from_text, word_to_text)
from .decoder import decode, decode_poles
from .experiments import CampaignConfig, run_campaign
from .field import PrimeField
from .poles import (check_subset_sum_constraint, encode_multiprecision,
                    min_distance_bruteforce_poles, pole_word_from_text,
                    pole_word_to_text)
from .polynomials import PointSystem, poly_from_text, poly_to_text

__all__ = ["main"]


def _add_code_args(sp, with_ell: bool) -> None:
    sp.add_argument("--p", type=int, required=True, help="field prime")
    sp.add_argument("--alphas", required=True,
                    help="comma-separated evaluation points")
    sp.add_argument("--lams", required=True,
                    help="comma-separated multiplicities")
    sp.add_argument("--d-f", dest="d_f", type=int, required=True,
                    help="numerator degree bound (exclusive)")
    sp.add_argument("--d-g", dest="d_g", type=int, required=True,
                    help="denominator degree bound (exclusive)")
    if with_ell:
        sp.add_argument("--ell", type=int, required=True,
                        help="number of interleaved numerators")


def _code_params(args, ell: int) -> CodeParams:
    field = PrimeField(args.p)
    alphas = [int(s) % args.p for s in args.alphas.split(",")]
    lams = [int(s) for s in args.lams.split(",")]
    points = PointSystem(field, alphas, lams)
    return CodeParams(field, points, args.d_f, args.d_g, ell)


def _parse_fraction(args, p: int):
    fs = [poly_from_text(s, p) for s in args.f.split(";")]
    g = poly_from_text(args.g, p)
    return FractionVector(fs, g)


def _read_word_text(args) -> str:
    if args.word:
        with open(args.word, "r", encoding="utf-8") as fh:
            return fh.read()
    return sys.stdin.read()


def _print_fraction(fv: FractionVector) -> None:
    print("f =", " ; ".join(poly_to_text(f) for f in fv.fs))
    print("g =", poly_to_text(fv.g))


def _cmd_encode(args) -> int:
    fs = args.f.split(";")
    cp = _code_params(args, len(fs))
    fv = _parse_fraction(args, args.p)
    print(word_to_text(encode(fv, cp), cp))
    return 0


def _cmd_decode(args) -> int:
    cp = _code_params(args, args.ell)
    word = word_from_text(_read_word_text(args), cp)
    out = decode(word, cp, args.t, explicit=args.explicit)
    if not out.success:
        print(f"decoding failure: {out.reason}", file=sys.stderr)
        return 1
    _print_fraction(out.fraction)
    return 0


def _cmd_encode_poles(args) -> int:
    fs = args.f.split(";")
    cp = _code_params(args, len(fs))
    fv = _parse_fraction(args, args.p)
    print(pole_word_to_text(encode_multiprecision(fv, cp), cp))
    return 0


def _cmd_decode_poles(args) -> int:
    cp = _code_params(args, args.ell)
    word = pole_word_from_text(_read_word_text(args), cp)
    out = decode_poles(word, cp, args.t, reduced=not args.unreduced)
    if not out.success:
        print(f"decoding failure: {out.reason}", file=sys.stderr)
        return 1
    _print_fraction(out.fraction)
    return 0


def _cmd_simulate(args) -> int:
    cfg = CampaignConfig.from_file(args.config, args.seed)
    report = run_campaign(cfg)
    if args.out:
        report.write_csv(args.out)
    print(report.summary())
    return 0 if report.passed else 1


def _cmd_bounds(args) -> int:
    locator = tuple(int(s) for s in args.locator.split(",")) \
        if args.locator else ()
    t = sum(locator)
    radius = Fraction(args.gap + t)
    if args.poles:
        fn = bound_thm1_poles if args.thm == 1 else bound_thm2_poles
        value = fn(args.q, args.l, t, radius, locator,
                   with_prefactor=args.with_prefactor)
    else:
        fn = bound_thm1 if args.thm == 1 else bound_thm2
        value = fn(args.q, args.l, t, radius, locator)
    print(value)
    return 0


def _cmd_mindist(args) -> int:
    cp = _code_params(args, args.ell)
    if args.poles:
        print(min_distance_bruteforce_poles(cp))
    else:
        print(min_distance_bruteforce(cp))
    return 0


def _cmd_check_constraint(args) -> int:
    cp = _code_params(args, 1)
    witness = check_subset_sum_constraint(cp)
    if witness is None:
        print("not satisfiable")
        return 1
    s0 = ",".join(str(j + 1) for j in witness.s0) or "-"
    s_inf = ",".join(str(j + 1) for j in witness.s_inf) or "-"
    print(f"satisfied: S0={{{s0}}} Sinf={{{s_inf}}} "
          f"eta={witness.eta + 1} gamma={witness.gamma + 1} "
          f"delta0={witness.delta0} deltainf={witness.delta_inf}")
    return 0


def _cmd_report(args) -> int:
    from .reporting import render_report

    for path in render_report(args.csv, args.out_dir):
        print(path)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="srf",
        description="Simultaneous rational function codes with "
                    "multiplicities and poles.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("encode", help="evaluate f_i/g at the point system")
    _add_code_args(sp, with_ell=False)
    sp.add_argument("--f", required=True,
                    help="';'-separated numerators, ascending coefficients")
    sp.add_argument("--g", required=True, help="denominator polynomial")
    sp.set_defaults(fn=_cmd_encode)

    sp = sub.add_parser("decode", help="recover f_i/g from a received word")
    _add_code_args(sp, with_ell=True)
    sp.add_argument("--t", type=int, required=True, help="distance parameter")
    sp.add_argument("--word", help="received word file (default: stdin)")
    sp.add_argument("--explicit", action="store_true",
                    help="solve the stacked linear system instead of the "
                         "eliminated one")
    sp.set_defaults(fn=_cmd_decode)

    sp = sub.add_parser("encode-poles",
                        help="encode with pole orders and shifted residues")
    _add_code_args(sp, with_ell=False)
    sp.add_argument("--f", required=True,
                    help="';'-separated numerators, ascending coefficients")
    sp.add_argument("--g", required=True, help="denominator polynomial")
    sp.set_defaults(fn=_cmd_encode_poles)

    sp = sub.add_parser("decode-poles",
                        help="recover f_i/g from a multi-precision word")
    _add_code_args(sp, with_ell=True)
    sp.add_argument("--t", type=int, required=True, help="distance parameter")
    sp.add_argument("--word", help="received word file (default: stdin)")
    sp.add_argument("--unreduced", action="store_true",
                    help="solve the direct key equations without clearing "
                         "the recorded pole orders")
    sp.set_defaults(fn=_cmd_decode_poles)

    sp = sub.add_parser("simulate", help="run a Monte-Carlo campaign")
    sp.add_argument("--config", required=True, help="campaign config file")
    sp.add_argument("--seed", type=int, help="override the config seed")
    sp.add_argument("--out", help="write per-trial CSV to this path")
    sp.set_defaults(fn=_cmd_simulate)

    sp = sub.add_parser("bounds", help="print an exact failure bound")
    sp.add_argument("--thm", type=int, choices=(1, 2), required=True,
                    help="1: exact-valuation model, 2: bounded-valuation")
    sp.add_argument("--q", type=int, required=True, help="field size")
    sp.add_argument("--l", type=int, required=True, help="interleaving")
    sp.add_argument("--gap", type=int, required=True,
                    help="decoding slack (radius minus distance parameter)")
    sp.add_argument("--locator", default="",
                    help="comma-separated root multiplicities of the locator")
    sp.add_argument("--poles", action="store_true",
                    help="use the pole-model bound (no 1/(q-1) prefactor)")
    sp.add_argument("--with-prefactor", action="store_true",
                    help="apply the 1/(q-1) prefactor to the pole bound")
    sp.set_defaults(fn=_cmd_bounds)

    sp = sub.add_parser("mindist", help="brute-force minimum distance")
    _add_code_args(sp, with_ell=False)
    sp.add_argument("--ell", type=int, default=1,
                    help="interleaving (the minimum is ell-independent)")
    sp.add_argument("--poles", action="store_true",
                    help="enumerate the pole-admitting codebook")
    sp.set_defaults(fn=_cmd_mindist)

    sp = sub.add_parser("check-constraint",
                        help="search the multiplicity split that makes the "
                             "minimum distance tight")
    _add_code_args(sp, with_ell=False)
    sp.set_defaults(fn=_cmd_check_constraint)

    sp = sub.add_parser("report", help="render figures for a campaign CSV")
    sp.add_argument("csv", help="campaign CSV file")
    sp.add_argument("--out-dir", help="figure directory (default: beside "
                                      "the CSV)")
    sp.set_defaults(fn=_cmd_report)
    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
