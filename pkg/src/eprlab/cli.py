"""Command-line entry point.

Every subcommand prints a human-readable summary, optionally writes CSV
(and PGM for the landscape scan), and exits 0 only when all of its checks
pass.  Outputs are deterministic: same argv and seed, same bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import math
import sys

from . import landscape, lhv, selfcheck, stabilizer, sterngerlach
from .states import GoldsteinParams

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

_UNIT_NAMES = {(1, 0): "+1", (-1, 0): "-1", (0, 1): "+i", (0, -1): "-i"}


def _fmt_complex(z: complex, digits: int = 6) -> str:
    key = (round(z.real), round(z.imag))
    if key in _UNIT_NAMES and abs(z - complex(*key)) < 1e-9:
        return _UNIT_NAMES[key]
    if z.imag == 0.0:
        return f"{z.real:.{digits}g}"
    return f"{z.real:.{digits}g}{z.imag:+.{digits}g}i"


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _finish(checks: list[tuple[str, bool]]) -> int:
    failed = [name for name, ok in checks if not ok]
    for name, ok in checks:
        print(f"[{'pass' if ok else 'FAIL'}] {name}")
    if failed:
        print(f"{len(failed)} of {len(checks)} checks failed")
        return EXIT_CHECK_FAILED
    print(f"all {len(checks)} checks passed")
    return EXIT_OK


def cmd_ghz_verify(args) -> int:
    reports = stabilizer.verify_ghz_relations(tol=args.tol)
    print(stabilizer.reports_to_text(reports))
    if args.csv:
        _write_text(args.csv, stabilizer.reports_to_csv_text(reports))
    return _finish([(r.label, r.passed) for r in reports])


def cmd_bell_verify(args) -> int:
    reports = stabilizer.verify_bell_relations(tol=args.tol)
    print(stabilizer.reports_to_text(reports))
    if args.csv:
        _write_text(args.csv, stabilizer.reports_to_csv_text(reports))
    return _finish([(r.label, r.passed) for r in reports])


def cmd_sigmaxy(args) -> int:
    report = stabilizer.verify_sigma_xy_observable()
    print(stabilizer.reports_to_text([report]))
    if args.csv:
        _write_text(args.csv, stabilizer.reports_to_csv_text([report]))
    return _finish([(report.label, report.passed)])


def cmd_hardy(args) -> int:
    params = GoldsteinParams(args.a, args.b, args.c)
    table = stabilizer.hardy_table(params)
    print(
        "coefficients (normalized): "
        f"a={_fmt_complex(params.a)} b={_fmt_complex(params.b)} c={_fmt_complex(params.c)}"
    )
    print(f"abc nonzero: {params.abc_nonzero}")
    print()
    for label in stabilizer.HARDY_CONTEXTS:
        probs = table.context(label)
        print(f"context ({label}):")
        for o1 in (0, 1):
            row = "  ".join(f"P({o1},{o2})={probs[o1, o2]:.6g}" for o2 in (0, 1))
            print("  " + row)
    instance = lhv.instance_from_table(table, zero_tol=args.tol)
    report = lhv.hardy_lhv_feasible(instance, zero_tol=args.tol)
    print()
    print(f"zero events harvested: {len(instance.zero_events)}")
    print(f"witness event (W1=0, W2=0) probability: {instance.witness_probability:.6g}")
    print(f"hidden-variable cover: {'feasible' if report.feasible else 'INFEASIBLE (contradiction)'}")
    norms = {i: stabilizer.uw_commutator_norm(params, i) for i in (1, 2)}
    print(f"commutator norms: |[U1,W1]|={norms[1]:.6g}  |[U2,W2]|={norms[2]:.6g}")
    checks = [
        ("Pr(U1=1,U2=1) = 0", table.uu[1, 1] <= args.tol),
        ("Pr(W1=0,U2=0) = 0", table.wu[0, 0] <= args.tol),
        ("Pr(U1=0,W2=0) = 0", table.uw[0, 0] <= args.tol),
        (
            "feasible exactly when the witness is vacuous",
            report.feasible == (instance.witness_probability <= args.tol),
        ),
        (
            "commutator norms vanish exactly when a*b or a*c vanishes",
            all(
                (norms[i] <= args.tol) == (abs(params.a * x) == 0.0)
                for i, x in ((1, params.b), (2, params.c))
            ),
        ),
    ]
    if args.csv:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["context", "outcome1", "outcome2", "probability"])
        for label, o1, o2, prob in table.rows():
            writer.writerow([label, o1, o2, f"{prob:.12g}"])
        _write_text(args.csv, buf.getvalue())
    return _finish(checks)


def cmd_lhv(args) -> int:
    if args.system == "ghz":
        system = lhv.ghz_parity_system()
    else:
        system = lhv.bell_parity_system()
    slots = lhv.system_slots(system)
    print("constraints:")
    for c in system:
        print("  " + c.label())
    found = lhv.enumerate_parity(system, slots)
    check = lhv.parity_multiply_check(system)
    total = 1 << len(slots)
    print(f"{len(found)} / {total} assignments satisfy the system")
    if check.contradiction:
        print("parity multiply check: contradiction certified "
              "(every slot even, right-hand product -1)")
    else:
        print(f"parity multiply check: no contradiction "
              f"(rhs product {check.rhs_product:+d}, all slots even: {check.all_slots_even})")
    if found:
        print()
        print(lhv.assignments_to_text(found, slots))
    if args.csv:
        _write_text(args.csv, lhv.assignments_to_csv_text(found, slots))
    if args.system == "ghz":
        checks = [
            ("enumeration certifies unsatisfiability", not found),
            ("multiply check certifies the contradiction", check.contradiction),
        ]
    else:
        checks = [
            ("enumeration finds satisfying assignments", bool(found)),
            ("multiply check reports no contradiction", not check.contradiction),
        ]
    checks.append(
        ("contradiction implies empty enumeration", (not check.contradiction) or not found)
    )
    return _finish(checks)


def cmd_corrmodel(args) -> int:
    checks = []
    ghz = lhv.ghz_parity_system()
    derived = lhv.derive_pair_product(ghz, label="three-spin pair product")
    print(f"three-spin derived constraint: exponents {derived.exponents}, "
          f"required {_fmt_complex(derived.allowed_values[0])}")
    ghz_ok = True
    for signs in itertools.product((1, -1), repeat=3):
        ev = lhv.evaluate_correlated(ghz, lhv.CorrelatedModel(dict(zip("ABC", signs))))
        print(f"  signs {signs}: value {_fmt_complex(ev.value)} "
              f"{'match' if ev.matches else 'MISMATCH'}")
        ghz_ok = ghz_ok and ev.matches
    checks.append(("three-spin system satisfied by all 8 sign vectors", ghz_ok))

    bell = lhv.bell_parity_system()
    derived_bell = lhv.derive_pair_product(bell, label="two-spin pair product")
    solutions = lhv.solve_signs([derived_bell], ["A", "B"])
    solved = {tuple(m.signs[p] for p in "AB") for m in solutions}
    print(f"two-spin derived constraint: exponents {derived_bell.exponents}, "
          f"required {_fmt_complex(derived_bell.allowed_values[0])}")
    for m in solutions:
        print(f"  satisfied by signs ({m.signs['A']:+d}, {m.signs['B']:+d})")
    checks.append(("two-spin system satisfied exactly by equal signs",
                   solved == {(1, 1), (-1, -1)}))

    single = lhv.single_spin_pair_product()
    values = {
        s: lhv.evaluate_pair_product(single, lhv.CorrelatedModel({"A": s}))
        for s in (1, -1)
    }
    print(f"single-spin observable -i*m_x*m_y: s=+1 -> {_fmt_complex(values[1])}, "
          f"s=-1 -> {_fmt_complex(values[-1])}")
    checks.append(
        ("single-spin values are +-1 for both signs",
         all(v in (1 + 0j, -1 + 0j) for v in values.values()))
    )

    solved_ghz = lhv.solve_signs([derived], list("ABC"))
    checks.append(("sign solver agrees with direct evaluation for three spins",
                   len(solved_ghz) == 8))
    if args.csv:
        _write_text(args.csv, lhv.models_to_csv_text(solutions, ["A", "B"]))
    return _finish(checks)


def cmd_bellscan(args) -> int:
    grid = landscape.AngleGrid(args.grid)
    result = landscape.scan(grid)
    alpha, beta, f_star = landscape.max_violation(grid)
    violating = [c for c in result.cells if c.violation]
    print(f"grid {args.grid}x{args.grid}: {len(result.regions)} violation regions, "
          f"max f = {f_star:.6f}")
    print(f"refined peak at alpha={alpha:.9f}, beta={beta:.9f}")
    for k, region in enumerate(result.regions, start=1):
        print(f"  region {k}: {region.size} cells, peak {region.peak_value:.6f} "
              f"at ({region.peak_alpha:.6f}, {region.peak_beta:.6f})")
    if args.csv:
        landscape.export(result.cells, args.csv, "csv")
        print(f"wrote {args.csv}")
    if args.pgm:
        landscape.export(result.cells, args.pgm, "pgm")
        print(f"wrote {args.pgm}")
    checks = [
        ("every violating cell has a nonzero local commutator",
         all(c.comm_norm > 0.0 for c in violating)),
        ("no violation on the equal-angle ridge",
         all(not c.violation for c in result.cells if c.alpha == c.beta)),
    ]
    if args.grid >= 100:
        checks.append(("exactly four violation regions", len(result.regions) == 4))
    return _finish(checks)


def cmd_sg(args) -> int:
    stats = sterngerlach.run_sequence(args.shots, args.seed)
    sys.stdout.write(sterngerlach.stats_to_lines(stats))
    if args.csv:
        _write_text(args.csv, sterngerlach.stats_to_csv_text(stats))
    bound_y = 3.0 * 0.5 / math.sqrt(stats.shots)
    checks = [
        ("window counts add up to the selected count",
         stats.window_a + stats.window_b == stats.y_up),
        ("y-up fraction within 3 sigma of 1/2",
         abs(stats.y_up_frequency - 0.5) < bound_y),
    ]
    if stats.y_up:
        bound_a = 3.0 * 0.5 / math.sqrt(stats.y_up)
        checks.append(("window-a fraction within 3 sigma of 1/2",
                       abs(stats.window_a_frequency - 0.5) < bound_a))
    return _finish(checks)


def cmd_selftest(args) -> int:
    results = selfcheck.run_self_test()
    return _finish([(f"{r.name}: {r.detail}", r.passed) for r in results])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eprlab",
        description="Verification workbench for entangled-state identities, "
                    "hidden-variable models, and the Bell-inequality landscape.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_csv(p):
        p.add_argument("--csv", metavar="PATH", help="write machine-readable CSV here")

    def add_tol(p):
        p.add_argument("--tol", type=float, default=1e-12,
                       help="verification tolerance (default 1e-12)")

    p = sub.add_parser("ghz-verify", help="check the three-spin eigenrelations")
    add_csv(p); add_tol(p)
    p.set_defaults(func=cmd_ghz_verify)

    p = sub.add_parser("bell-verify", help="check the two-spin eigenrelations")
    add_csv(p); add_tol(p)
    p.set_defaults(func=cmd_bell_verify)

    p = sub.add_parser("sigmaxy", help="check the -i*sigma_x*sigma_y observable")
    add_csv(p)
    p.set_defaults(func=cmd_sigmaxy)

    p = sub.add_parser("hardy", help="Hardy-type joint probability table and feasibility")
    p.add_argument("--a", type=float, default=1.0, help="coefficient of |dn,dn> (default 1)")
    p.add_argument("--b", type=float, default=1.0, help="coefficient of |up,dn> (default 1)")
    p.add_argument("--c", type=float, default=1.0, help="coefficient of |dn,up> (default 1)")
    add_csv(p); add_tol(p)
    p.set_defaults(func=cmd_hardy)

    p = sub.add_parser("lhv", help="exhaustive hidden-variable enumeration")
    p.add_argument("system", choices=["ghz", "bell"], help="constraint system to solve")
    add_csv(p)
    p.set_defaults(func=cmd_lhv)

    p = sub.add_parser("corrmodel", help="evaluate the complex local-correlation model")
    add_csv(p)
    p.set_defaults(func=cmd_corrmodel)

    p = sub.add_parser("bellscan", help="scan the Bell-inequality landscape")
    p.add_argument("--grid", type=int, default=400, metavar="N",
                   help="cells per axis (default 400)")
    add_csv(p)
    p.add_argument("--pgm", metavar="PATH", help="write a 16-bit ASCII PGM heatmap here")
    p.set_defaults(func=cmd_bellscan)

    p = sub.add_parser("sg", help="sequential Stern-Gerlach Monte Carlo")
    p.add_argument("--shots", type=int, default=100000, metavar="N",
                   help="number of shots (default 100000)")
    p.add_argument("--seed", type=int, default=1, metavar="S",
                   help="random seed (default 1)")
    add_csv(p)
    p.set_defaults(func=cmd_sg)

    p = sub.add_parser("selftest", help="run the full cross-module invariant suite")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
