"""Command-line entry point: partparity {verify,scan,psi,class,identities,cache}."""

from __future__ import annotations

import argparse
import sys
import time

from . import harness
from .arith import is_squarefree

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SCAN_COLUMNS = [
    "D", "admissible", "h", "frob_order", "orbit_count", "first_odd_m", "odd_bound",
    "first_even_m", "even_bound", "bounds_ok", "conditions",
]


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, list):
        return "".join(_fmt(x) for x in v) if v and isinstance(v[0], bool) else ",".join(map(str, v))
    return str(v)


def _row(rep: harness.ParityReport) -> str:
    return "\t".join(_fmt(getattr(rep, c)) for c in SCAN_COLUMNS)


def _disc(parser: argparse.ArgumentParser, D: int) -> int:
    if D <= 0 or D % 24 != 23 or not is_squarefree(D):
        parser.error(f"--d must be a square-free integer = 23 mod 24 (got {D})")
    return D


def cmd_verify(args, parser) -> int:
    D = _disc(parser, args.d)
    cfg = harness.VerifyConfig(order=args.order, lambert=True if args.lambert else None)
    try:
        rep = harness.verify_discriminant(D, cfg)
    except harness.StageError as exc:
        print(f"FAIL\t{exc}")
        return EXIT_FAIL
    for k, v in rep.to_dict().items():
        if k == "lambert_mismatches" and len(v) > 40:
            v = v[:40] + ["..."]
        print(f"{k}\t{_fmt(v) if k != 'failures' else ' | '.join(v) or '-'}")
    if args.json:
        harness.write_json([rep], args.json)
    print("status\t" + ("ok" if rep.ok else "FAIL"))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_scan(args, parser) -> int:
    if args.dmax < 23:
        parser.error("--dmax must be at least 23")
    cfg = harness.VerifyConfig(order=args.order, lambert=False if args.no_lambert else None)
    t = time.time()
    reports = harness.scan(args.dmax, cfg, jobs=args.jobs)
    print("\t".join(SCAN_COLUMNS))
    for r in reports:
        print(_row(r))
    failed = [r for r in reports if not r.ok]
    for r in failed:
        for msg in r.failures:
            print(f"# D={r.D}: {msg}")
    print(f"# {len(reports)} discriminants, {len(failed)} with failures, {time.time() - t:.1f}s")
    if args.out:
        harness.write_reports(reports, args.out)
        print(f"# report: {args.out}")
        if not args.no_figures:
            from .plots import write_figures

            for p in write_figures(reports, args.out):
                print(f"# figure: {p}")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_psi(args, parser) -> int:
    from .borcherds import psi, psi_mod2

    D = _disc(parser, args.d)
    if args.order < 1:
        parser.error("--order must be positive")
    p = psi(D, args.order)
    if args.mod2:
        print("".join(map(str, psi_mod2(p).to_list())))
    else:
        for n, c in enumerate(p.coeffs):
            print(f"{n}\t{c}")
    return EXIT_OK


def cmd_class(args, parser) -> int:
    from .heegner import class_group, heegner_set, odd_order_equivalences, orbit_report

    D = _disc(parser, args.d)
    G = class_group(D)
    hs = heegner_set(D)
    orb = orbit_report(D)
    cond = odd_order_equivalences(D)
    print(f"D\t{D}\nh\t{G.h}\nfrobenius\t{orb.frob_class}\tord\t{orb.frob_order}")
    print("rep\tclass\teps")
    for r in hs.reps:
        print(f"{r}\t{hs.class_of[r]}\t{orb.eps[r]:+d}")
    for i, (o, e, par) in enumerate(zip(orb.orbits, orb.orbit_eps, orb.residue_parity)):
        print(f"orbit {i}\tsize {len(o)}\teps {e:+d}\tresidue parity {par}")
    print("conditions\t" + "".join("1" if c else "0" for c in cond.as_tuple()))
    if cond.anomaly:
        print("# [p] is a square and all genus characters are trivial, yet its order is even")
    return EXIT_OK


def cmd_identities(args, parser) -> int:
    from .partitions import durfee_series, mock_f, partition_table

    N = args.order
    if N < 1:
        parser.error("--order must be positive")
    limit = max(N, 10**4)
    pt = partition_table(limit)
    checks = []
    t = time.time()
    checks.append(("durfee", durfee_series(N).coeffs == pt.values[:N], time.time() - t))
    t = time.time()
    f = mock_f(N)
    checks.append(("f_equiv_P_mod_4", all((a - b) % 4 == 0 for a, b in zip(f.coeffs, pt.values)), time.time() - t))
    t = time.time()
    ok = all(
        pt[n] % mod == 0
        for mod, r in ((5, 4), (7, 5), (11, 6))
        for n in range(r, 10**4, mod)
    )
    checks.append(("ramanujan_5_7_11", ok, time.time() - t))
    for name, ok, dt in checks:
        print(f"{name}\t{'PASS' if ok else 'FAIL'}\t{dt:.2f}s")
    return EXIT_OK if all(ok for _, ok, _ in checks) else EXIT_FAIL


def cmd_cache(args, parser) -> int:
    from .partitions import ParityBitmap, parity_bitmap

    if args.action == "build":
        if args.limit is None or args.out is None:
            parser.error("cache build needs --limit and --out")
        if args.limit < 1:
            parser.error("--limit must be positive")
        t = time.time()
        bm = parity_bitmap(args.limit)
        bm.save(args.out)
        print(f"limit\t{bm.limit}\nodd\t{bm.count_odd()}\nseconds\t{time.time() - t:.2f}\nfile\t{args.out}")
        return EXIT_OK
    if args.file is None:
        parser.error("cache info needs a FILE")
    try:
        bm = ParityBitmap.load(args.file)
    except (OSError, ValueError) as exc:
        print(f"error\t{exc}", file=sys.stderr)
        return EXIT_FAIL
    print(f"limit\t{bm.limit}\nodd\t{bm.count_odd()}\neven\t{bm.limit - bm.count_odd()}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="partparity", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="single-discriminant report")
    v.add_argument("--d", type=int, required=True)
    v.add_argument("--order", type=int, default=300)
    v.add_argument("--lambert", action="store_true", help="force the series-side check")
    v.add_argument("--json", metavar="PATH")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("scan", help="all square-free D = 23 mod 24 up to --dmax")
    s.add_argument("--dmax", type=int, required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out", metavar="PATH", help=".json or .csv; figures are written alongside")
    s.add_argument("--order", type=int, default=300)
    s.add_argument("--no-lambert", action="store_true", help="skip the series-side check entirely")
    s.add_argument("--no-figures", action="store_true")
    s.set_defaults(func=cmd_scan)

    p = sub.add_parser("psi", help="print the q-expansion of Psi_D")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--mod2", action="store_true")
    p.set_defaults(func=cmd_psi)

    c = sub.add_parser("class", help="class group, Heegner set, orbits, epsilon table")
    c.add_argument("--d", type=int, required=True)
    c.set_defaults(func=cmd_class)

    i = sub.add_parser("identities", help="Durfee, f = P mod 4, Ramanujan congruences")
    i.add_argument("--order", type=int, default=2000)
    i.set_defaults(func=cmd_identities)

    k = sub.add_parser("cache", help="parity bitmap file")
    k.add_argument("action", choices=["build", "info"])
    k.add_argument("file", nargs="?")
    k.add_argument("--limit", type=int)
    k.add_argument("--out")
    k.set_defaults(func=cmd_cache)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
