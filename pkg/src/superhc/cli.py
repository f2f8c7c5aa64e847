"""Command-line front end: ``superhc catalog``, ``superhc ghost`` and ``superhc verify``."""

from __future__ import annotations

import argparse
import json
import sys

from .expr import EvaluationError, ParseError, evaluate, parse
from .hc import InvarianceFailure, NoIwasawa, ghost_generator, ghost_hc, twisted_ghost_generator
from .pairs import NotRealizable, NotSpecial, catalog, find_pair, is_interlaced, realize_pair
from .scalars import GaussianRational, format_rational
from . import verify

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

SUITES = ("rank1", "gl-product", "conjecture", "reduction", "vanishing", "even-pairs", "all")
FAMILIES = ("gl", "osp", "exceptional")


def _family_matches(desc, family: str) -> bool:
    return desc.family == family or desc.family.split("/")[0] == family


def _yes(flag) -> str:
    if flag is None:
        return "-"
    return "yes" if flag else "no"


def cmd_catalog(args) -> int:
    rows = []
    for desc in catalog():
        if args.family and not _family_matches(desc, args.family):
            continue
        if args.max_dim is not None and desc.dim > args.max_dim:
            continue
        if args.rank is not None and desc.rank != args.rank:
            continue
        rows.append({
            "pairId": desc.pair_id,
            "family": desc.family,
            "g": desc.g_label,
            "k": desc.k_label,
            "dim": desc.dim,
            "rank": desc.rank if desc.realizable else None,
            "realizable": desc.realizable,
            "iwasawa": desc.iwasawa_expected,
            "interlaced": desc.interlaced_expected,
            "special": desc.special,
        })
    if args.json:
        print(json.dumps(rows, indent=1, ensure_ascii=False))
        return EXIT_OK
    header = ("pair", "family", "dim", "rank", "realizable", "iwasawa", "interlaced", "special")
    table = [header] + [
        (r["pairId"], r["family"], str(r["dim"]), "-" if r["rank"] is None else str(r["rank"]),
         _yes(r["realizable"]),
         _yes(r["iwasawa"]), _yes(r["interlaced"]), _yes(r["special"]))
        for r in rows
    ]
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    for row in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return EXIT_OK


def cmd_ghost(args) -> int:
    desc = find_pair(args.pair)
    pair = realize_pair(desc)
    if pair.iwasawa is None:
        raise NoIwasawa(f"{desc.pair_id} has no Iwasawa decomposition")
    if args.c is not None:
        c = GaussianRational.parse(args.c)
        if args.z:
            raise ValueError("--z and --c cannot be combined")
        poly = twisted_ghost_generator(pair, c).hc_image
    elif args.z:
        z = evaluate(parse(args.z), pair)
        poly = ghost_hc(pair, z).hc_image
    else:
        poly = ghost_generator(pair).hc_image
    monic, scalar = poly.monic()
    if args.json:
        print(json.dumps({"pairId": desc.pair_id, "polynomial": monic.to_json(),
                          "scalar": {"re": format_rational(scalar.re), "im": format_rational(scalar.im)}}))
    else:
        print(f"({monic})")
        print(f"scalar: {scalar}")
    return EXIT_OK


def _rank_one_pairs():
    for desc in catalog():
        if desc.rank == 1 and desc.realizable and desc.iwasawa_expected:
            yield desc


def _suite_rank1(bound):
    reports = []
    for desc in _rank_one_pairs():
        reports.extend(verify.check_rank_one(desc.pair_id))
    return reports


def _suite_gl_product(bound):
    return [verify.check_gl_product_formula(r, n) for r in (1, 2) for n in (1, 2)]


def _suite_conjecture(bound):
    reports = []
    for desc in _rank_one_pairs():
        pair = realize_pair(desc)
        v_degree = ghost_generator(pair).hc_image.degree
        images = verify.ghost_images(pair, max(0, (bound - v_degree) // 2))
        result = verify.check_conjecture(pair, images)
        interlaced = is_interlaced(pair)
        failed = result.failed()
        if interlaced:
            status = "pass" if not failed else "fail"
            detail = "; ".join(c.witness for c in failed[:3])
        else:
            refl = result.failed("reflection")
            status = "expected-fail" if refl else "fail"
            detail = "reflection condition fails" if refl else "expected a reflection failure"
        reports.append(verify.Report("conjecture", desc.pair_id, status, "conditions (i) and (ii)",
                                     f"{len(result.conditions) - len(failed)}/{len(result.conditions)} hold",
                                     None, detail))
        if interlaced:
            square = images[0] * images[0]
            ok = verify.check_center_conditions(square, pair.restricted)
            reports.append(verify.Report("center", desc.pair_id, "pass" if ok else "fail",
                                         "HC(v)^2 meets the centre conditions", str(square)))
    return reports


def _suite_reduction(bound):
    return [verify.check_reduction(d.pair_id) for d in catalog() if d.reduces_to]


def _suite_vanishing(bound):
    return [verify.check_vanishing(d.pair_id) for d in _rank_one_pairs() if d.family == "gl/gl×gl"]


def _suite_even_pairs(bound):
    return [verify.check_even_pairs(d.pair_id, bound) for d in _rank_one_pairs()
            if verify.in_even_pairs_list(d)]


_SUITE_FUNCS = {
    "rank1": _suite_rank1,
    "gl-product": _suite_gl_product,
    "conjecture": _suite_conjecture,
    "reduction": _suite_reduction,
    "vanishing": _suite_vanishing,
    "even-pairs": _suite_even_pairs,
}


def cmd_verify(args) -> int:
    names = [s for s in SUITES if s != "all"] if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        reports.extend(_SUITE_FUNCS[name](args.degree_bound))
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=1, ensure_ascii=False))
    else:
        for r in reports:
            line = f"{r.status.upper():14} {r.check:16} {r.pair_id}"
            if r.scalar:
                line += f"  scalar {r.scalar}"
            print(line)
            if r.status == "fail":
                print(f"    expected: {r.expected}")
                print(f"    computed: {r.computed}")
                if r.detail:
                    print(f"    {r.detail}")
        counts = {}
        for r in reports:
            counts[r.status] = counts.get(r.status, 0) + 1
        print(", ".join(f"{k}: {v}" for k, v in sorted(counts.items())))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superhc", description="Ghost distributions and Harish-Chandra images "
                                     "for supersymmetric pairs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_cat = sub.add_parser("catalog", help="list supersymmetric pairs")
    p_cat.add_argument("--family", choices=FAMILIES + ("gl/gl×gl", "gl/osp", "osp/gl", "osp/osp×osp"))
    p_cat.add_argument("--max-dim", type=int)
    p_cat.add_argument("--rank", type=int)
    p_cat.add_argument("--json", action="store_true")
    p_cat.set_defaults(func=cmd_catalog)

    p_ghost = sub.add_parser("ghost", help="HC image of the ghost generator times z")
    p_ghost.add_argument("pair")
    p_ghost.add_argument("--z", help="even k_0-invariant element, e.g. Omega0^2")
    p_ghost.add_argument("--c", help="twist parameter for special pairs, e.g. 2 or 1/2*i")
    p_ghost.add_argument("--json", action="store_true")
    p_ghost.set_defaults(func=cmd_ghost)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("suite", choices=SUITES)
    p_ver.add_argument("--degree-bound", type=int, default=6)
    p_ver.add_argument("--json", action="store_true")
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"superhc: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyError as exc:
        print(f"superhc: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotSpecial, NoIwasawa, NotRealizable, InvarianceFailure, EvaluationError, ValueError) as exc:
        print(f"superhc: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    raise SystemExit(main())
