"""Command-line front end.

Subcommands: poly, matrix-m, indices, audit, oracle, sweep, count,
sato-tate.  Every emitted number is an exact rational string; the report
paths (sweep, sato-tate) render a matplotlib figure next to the CSV.
Exit codes: 0 success, 1 internal failure or defect, 2 theorem-hypothesis
failure (for example det M = 0 in the base field), 3 conjecture-grade run
with discrepancies.
"""

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from .curve import HyperellipticCurve, det_M, gv_path_count, matrix_M
from .errors import GwinflectError, ParseError, TheoremHypothesisFailed
from .explorer import hasse_weil_table, sato_tate_c2, sweep_weierstrass, weierstrass_family
from .factor import roots_in_field
from .fields import FunctionField, PrimeField, sqrt_in_finite_field
from .gw import gw_invariants
from .indices import audit, index_by_series_oracle, index_infinity, index_ramified, \
    index_unramified, RANK_ONLY
from .inflection import atomic_p, inflection_poly
from .parser import parse_poly
from .poly import DensePoly, format_poly_cleared
from .serialize import parse_field_spec
from .curve import RamificationPoint


def _build_parser():
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--out", default=argparse.SUPPRESS,
                        help="output directory (default: $GWINFLECT_OUT or '.')")
    shared.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomized factoring")
    shared.add_argument("--config", default=argparse.SUPPRESS,
                        help="JSON file with default options")
    top = argparse.ArgumentParser(prog="gwinflect", parents=[shared],
                                  description="exact GW-valued inflection data of "
                                              "hyperelliptic curves y^2 = f(x)")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", parents=[shared], help="print an inflection polynomial")
    p.add_argument("--n", type=int, default=None, help="atomic index (family polynomials)")
    p.add_argument("--g", type=int, default=None)
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--family", choices=["weierstrass", "legendre"], default=None)
    p.add_argument("--f", default=None, help="curve polynomial in x (exact coefficients)")
    p.add_argument("--field", default="Q")

    m = sub.add_parser("matrix-m", parents=[shared], help="the binomial matrix, its determinant, "
                                        "and the lattice-path count")
    m.add_argument("--ell", type=int, required=True)
    m.add_argument("--g", type=int, required=True)

    for name, helptext in (("indices", "per-point local index reports"),
                           ("audit", "sum local indices against the global class"),
                           ("oracle", "series-oracle cross-check at rational points")):
        q = sub.add_parser(name, parents=[shared], help=helptext)
        q.add_argument("--field", required=True, help='"Q", "R", or "Fq:p=13"')
        q.add_argument("--f", required=True, help="f(x), e.g. \"x^3+x+2\"")
        q.add_argument("--ell", type=int, required=True)
        if name == "oracle":
            q.add_argument("--b", type=int, default=None, help="projection slope override")
            q.add_argument("--truncation-cap", type=int, default=512,
                           help="largest series order the oracle may escalate to")

    s = sub.add_parser("sweep", parents=[shared], help="real-root sweep over the Weierstrass j-line")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--grid", default="-9/2:7/2:1/2",
                   help='"lo:hi:step" or comma list of exact rationals')

    c = sub.add_parser("count", parents=[shared], help="point counts and Hasse-Weil bounds")
    c.add_argument("--n", default="2,3,4", help="comma list of atomic indices")
    c.add_argument("--primes-up-to", type=int, default=200)

    t = sub.add_parser("sato-tate", parents=[shared], help="C_2 identity and renormalized error histogram")
    t.add_argument("--bound", type=int, default=500)
    return top


def _apply_config(args):
    args.out = getattr(args, "out", None)
    args.seed = getattr(args, "seed", 0)
    args.config = getattr(args, "config", None)
    if args.config:
        with open(args.config) as fh:
            defaults = json.load(fh)
        for key, value in defaults.items():
            attr = key.replace("-", "_")
            if getattr(args, attr, None) in (None, ""):
                setattr(args, attr, value)
    return args


def _out_dir(args):
    out = args.out or os.environ.get("GWINFLECT_OUT") or "."
    os.makedirs(out, exist_ok=True)
    return out


def _parse_curve(args):
    field = parse_field_spec(args.field)
    expr = parse_poly(args.f)
    extra = [v for v in expr.variables if v != "x"]
    if extra:
        raise ParseError(f"curve polynomial may only use x; saw {extra}")
    f = expr.to_poly(field, var="x")
    return field, HyperellipticCurve(f)


def _cmd_poly(args, out):
    if args.family == "weierstrass" or (args.family is None and args.f is None):
        if args.n is None and args.g is None:
            raise GwinflectError("poly needs --n (atomic) or --g/--ell")
        n = args.n if args.n is not None else args.g + 2
        poly = weierstrass_family(n)
        print(f"P_{n} of y^2 = x^3 + a*x + 2:")
        print(format_poly_cleared(poly))
        return 0
    if args.family == "legendre":
        ff = FunctionField("k")
        kk = ff.gen()
        f = DensePoly(ff, [0, 1]) * DensePoly(ff, [-1, 1]) * DensePoly(ff, [-kk, ff.one()])
        n = args.n if args.n is not None else 3
        poly = atomic_p(n, f)
        print(f"P_{n} of y^2 = x(x-1)(x-k):")
        print(format_poly_cleared(poly))
        return 0
    field = parse_field_spec(args.field)
    f = parse_poly(args.f).to_poly(field, var="x")
    if args.n is not None:
        from .inflection import atomic

        print(format_poly_cleared(atomic(args.n, f)))
        return 0
    if args.g is None or args.ell is None:
        raise GwinflectError("poly with --f needs --n or both --g and --ell")
    print(format_poly_cleared(inflection_poly(args.g, args.ell, f)))
    return 0


def _cmd_matrix_m(args, out):
    mat = matrix_M(args.ell, args.g)
    det = det_M(args.ell, args.g)
    gv = gv_path_count(args.ell, args.g)
    for row in mat:
        print("  ".join(f"{v:4d}" for v in row))
    agree = det == gv
    print(f"det = {det}, lattice-path count = {gv}, agreement: {agree}")
    payload = {"ell": args.ell, "g": args.g, "matrix": mat, "det": det,
               "gv_count": gv, "agree": agree}
    with open(os.path.join(out, "matrix_m.json"), "w") as fh:
        json.dump(payload, fh, indent=1)
    return 0 if agree else 1


def _cmd_indices(args, out):
    field, curve = _parse_curve(args)
    result = audit(curve, args.ell, seed=args.seed)
    path = os.path.join(out, "indices.json")
    with open(path, "w") as fh:
        json.dump([p.to_json() for p in result.points], fh, indent=1)
    for p in result.points:
        print(f"{p.point}: index {p.index}, m={p.multiplicity}, "
              f"formula {p.formula_used}, flags {list(p.flags)}")
    print(f"wrote {path}")
    return 0


def _cmd_audit(args, out):
    field, curve = _parse_curve(args)
    result = audit(curve, args.ell, seed=args.seed)
    path = os.path.join(out, "audit.json")
    with open(path, "w") as fh:
        json.dump(result.to_json(), fh, indent=1)
    print(f"total: {result.total} (rank {result.total.rank()})")
    print(f"expected: {result.expected} (rank {result.expected.rank()})")
    print(f"verdict: {result.verdict}")
    for r in result.reasons:
        print(f"  note: {r}")
    print(f"wrote {path}")
    return 0 if result.verdict.get("rank") == "pass" else 1


def _cmd_oracle(args, out):
    field, curve = _parse_curve(args)
    ell = args.ell
    if not isinstance(field, PrimeField):
        raise GwinflectError("the oracle cross-check runs over prime fields")
    rows = []
    agree_all = True
    cap = args.truncation_cap
    for gamma, _ in roots_in_field(curve.f, seed=args.seed):
        closed = index_ramified(curve, gamma, ell)
        orc = index_by_series_oracle(curve, ell, RamificationPoint.affine(gamma),
                                     b=args.b, max_order=cap)
        rows.append(_compare_row(f"ramified x={gamma}", closed, orc))
    closed = index_infinity(curve, ell)
    orc = index_by_series_oracle(curve, ell, RamificationPoint.infinity(), max_order=cap)
    rows.append(_compare_row("infinity", closed, orc))
    if ell > curve.genus:
        P = inflection_poly(curve.genus, ell, curve.f)
        for gamma, _ in roots_in_field(P, seed=args.seed):
            fg = curve.f.eval(gamma)
            if not fg or not field.is_square(fg):
                continue
            delta = sqrt_in_finite_field(field, fg)
            for sheet, y0 in ((1, delta), (-1, -delta)):
                closed = index_unramified(curve, ell, gamma, sheet=sheet, inflection=P)
                orc = index_by_series_oracle(curve, ell, (gamma, y0), b=args.b, max_order=cap)
                rows.append(_compare_row(f"inflection x={gamma} sheet {sheet:+d}",
                                         closed, orc))
    agree_all = all(r["agree"] for r in rows)
    path = os.path.join(out, "oracle.json")
    with open(path, "w") as fh:
        json.dump(rows, fh, indent=1)
    for r in rows:
        print(f"{r['point']}: closed {r['closed']} vs oracle {r['oracle']} "
              f"({'ok' if r['agree'] else 'MISMATCH'})")
    print(f"wrote {path}")
    return 0 if agree_all else 1


def _compare_row(label, closed, orc):
    rank_only = RANK_ONLY in closed.flags or RANK_ONLY in orc.flags
    if rank_only:
        agree = closed.index.rank() == orc.index.rank()
    else:
        agree = (closed.index.rank() == orc.index.rank()
                 and gw_invariants(closed.index) == gw_invariants(orc.index))
    return {"point": label, "closed": str(closed.index), "oracle": str(orc.index),
            "rank_only": rank_only, "agree": agree}


def _parse_grid(spec):
    if ":" in spec:
        lo, hi, step = (Fraction(part) for part in spec.split(":"))
        if step <= 0:
            raise GwinflectError("grid step must be positive")
        vals = []
        v = lo
        while v <= hi:
            vals.append(v)
            v += step
        return vals
    return [Fraction(part) for part in spec.split(",")]


def _cmd_sweep(args, out):
    result = sweep_weierstrass(args.n, _parse_grid(args.grid))
    path = os.path.join(out, "sweep.csv")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["a", "root_count", "signs", "separable"])
        for e in result.entries:
            writer.writerow([_rat(e.a), e.root_count,
                             "|".join(str(s) for s in e.f_signs),
                             "excluded" if e.excluded else str(e.separable).lower()])
    from .plotting import render_sweep

    fig_path = os.path.join(out, "sweep.png")
    render_sweep(result, fig_path)
    print(f"n={result.n}: separability locus size {len(result.separability_locus)} "
          f"(conjecture: {result.expected_locus_size}), "
          f"monotone non-increasing: {result.monotone_nonincreasing}")
    for lo, hi, cnt in result.interval_counts:
        print(f"  a in ({lo}, {hi}): {cnt} real roots")
    for note in result.conjecture_notes:
        print(f"  discrepancy: {note}")
    print(f"wrote {path} and {fig_path}")
    return 3 if result.conjecture_notes else 0


def _rat(value):
    fr = Fraction(value)
    return f"{fr.numerator}/{fr.denominator}"


def _cmd_count(args, out):
    ns = [int(v) for v in str(args.n).split(",")]
    records = hasse_weil_table(ns, args.primes_up_to)
    path = os.path.join(out, "points.csv")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "p", "count", "e", "e_normalized_numerator",
                         "denominator_convention"])
        for r in records:
            writer.writerow([r.n, r.p, r.count, r.e, r.normalized_numerator(),
                             r.denominator_convention()])
    bad = [r for r in records if not r.hasse_weil_bound_holds]
    print(f"{len(records)} records; Hasse-Weil violations: {len(bad)}")
    for r in bad:
        print(f"  n={r.n} p={r.p} e={r.e}")
    print(f"wrote {path}")
    return 1 if bad else 0


def _cmd_sato_tate(args, out):
    report = sato_tate_c2(args.bound)
    points_path = os.path.join(out, "points.csv")
    with open(points_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "p", "count", "e", "e_normalized_numerator",
                         "denominator_convention"])
        for r in report.records:
            writer.writerow([r.n, r.p, r.count, r.e, r.normalized_numerator(),
                             r.denominator_convention()])
    hist_path = os.path.join(out, "histogram.csv")
    with open(hist_path, "w", newline="") as fh:
        fh.write("# bins of e/(2*(2n-1)(2n-2)*sqrt(p)) on [-1,1]; edges: "
                 + ", ".join(_rat(Fraction(k, 20) - 1) for k in range(41)) + "\n")
        writer = csv.writer(fh)
        writer.writerow(["bin_lo", "bin_hi", "frequency"])
        for lo, hi, freq in report.histogram:
            writer.writerow([_rat(lo), _rat(hi), freq])
    from .plotting import render_histogram

    fig_path = os.path.join(out, "histogram.png")
    render_histogram(report.histogram, fig_path)
    print(f"primes to {args.bound}: identity #C_2(F_p) = #E(F_p) - (3|p) "
          f"{'holds everywhere' if not report.identity_failures else 'FAILS'}")
    for p, got, want in report.identity_failures:
        print(f"  p={p}: #C_2={got}, #E-(3|p)={want}")
    print(f"split primes binned: {report.split_primes}")
    print(f"inert primes at the CM atom (a_p = 0, reported not asserted): "
          f"{report.inert_supersingular}/{report.inert_primes}")
    print(f"wrote {points_path}, {hist_path}, {fig_path}")
    return 1 if report.identity_failures else 0


_HANDLERS = {
    "poly": _cmd_poly,
    "matrix-m": _cmd_matrix_m,
    "indices": _cmd_indices,
    "audit": _cmd_audit,
    "oracle": _cmd_oracle,
    "sweep": _cmd_sweep,
    "count": _cmd_count,
    "sato-tate": _cmd_sato_tate,
}


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        args = _apply_config(args)
        out = _out_dir(args)
        return _HANDLERS[args.command](args, out)
    except TheoremHypothesisFailed as err:
        print(f"theorem hypothesis failed: {err}", file=sys.stderr)
        return 2
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return 1
    except GwinflectError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
