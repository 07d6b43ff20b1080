"""Command-line front end.

Subcommands: list, info, build, decimate, count, verify, entropy.  A
fractal argument is either a builtin name or a path to a JSON definition
file.  Exit codes: 0 success, 1 validation/usage error, 2 internal
inconsistency (a failed exactness check).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import mpmath

from .counting import AssemblyError, tau
from .decimation import (
    DecimationError,
    InconsistentSpectrumError,
    crosscheck_spectrum,
    derive,
    spectrum,
)
from .entropy import entropy
from .kirchhoff import tau_bruteforce, verify_matrix_tree
from .levels import build_level, export, vertex_count_formula
from .structures import (
    BUILTIN_NAMES,
    InvalidStructureError,
    builtin,
    load_json,
    to_json_dict,
    validate,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INCONSISTENT = 2

# levels above this build very large graphs; the oracle warns before trying
BRUTE_FORCE_SOFT_CAP = 400


def max_threads() -> int:
    """Worker cap for embarrassingly parallel verification work."""
    raw = os.environ.get("DECIMATION_TREES_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _resolve(name: str):
    if name in BUILTIN_NAMES:
        return builtin(name)
    if os.path.exists(name):
        s = load_json(name)
        report = validate(s)
        if not report.ok:
            raise InvalidStructureError(report)
        return s
    raise KeyError(
        f"unknown fractal {name!r}: not a builtin "
        f"({', '.join(BUILTIN_NAMES)}) and no such file"
    )


def _print_json(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def cmd_list(args) -> int:
    for name in BUILTIN_NAMES:
        print(name)
    return EXIT_OK


def cmd_info(args) -> int:
    s = _resolve(args.fractal)
    report = validate(s)
    if args.format == "json":
        data = to_json_dict(s)
        data["schema"] = "1"
        data["valid"] = report.ok
        data["violations"] = list(report.violations)
        _print_json(data)
    else:
        print(f"name:      {s.name}")
        print(f"cells:     {s.m}")
        print(f"|V0|:      {s.v0_size}")
        print(f"|V1|:      {s.v1_size}")
        print(f"G1 edges:  {sum(m for _, _, m in s.edges1)}")
        print(f"boundary:  {list(s.boundary)}")
        print(f"valid:     {report.ok}")
        for v in report.violations:
            print(f"  violation: {v}")
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_build(args) -> int:
    s = _resolve(args.fractal)
    g = build_level(s, args.level)
    sys.stdout.write(export(g, args.format))
    if args.format == "json":
        sys.stdout.write("\n")
    return EXIT_OK


def cmd_decimate(args) -> int:
    s = _resolve(args.fractal)
    dd = derive(s)
    table = spectrum(dd, args.level)
    num, den = dd.primitive_R()
    _, q0, pd = dd.primitive_triple()
    r_text = str(num) if den == 1 else f"({num}) / ({den})"
    if args.format == "json":
        _print_json(
            {
                "schema": "1",
                "fractal": s.name,
                "phi": str(dd.phi),
                "R": r_text,
                "d": dd.d,
                "Q0": str(q0),
                "Pd": str(pd),
                "sigma_D": [
                    {"class": str(cls.minpoly), "mult": mult}
                    for cls, mult in dd.sigma_d
                ],
                "exceptional": [
                    {
                        "value": str(rec.value),
                        "case": rec.case_id,
                        "mult_D": rec.mult_d,
                        "image": None if rec.image is None else str(rec.image),
                    }
                    for rec in (dd.case_records[c] for c in dd.exceptional)
                ],
                "spectrum_level": args.level,
                "spectrum": [
                    {"base": str(cls), "minpoly": str(cls.minpoly), "depth": k, "mult": mult}
                    for cls, k, mult in table.entries
                ],
            }
        )
        return EXIT_OK
    print(f"phi(z) = {dd.phi}")
    print(f"R(z)   = {r_text}")
    print(f"d = {dd.d}, Q(0) = {q0}, P_d = {pd}")
    print("sigma(D):")
    for cls, mult in dd.sigma_d:
        print(f"  {cls}  (minpoly {cls.minpoly}, mult {mult})")
    print("exceptional values:")
    for cls in dd.exceptional:
        rec = dd.case_records[cls]
        img = "pole" if rec.image is None else str(rec.image)
        print(
            f"  {cls}: case {rec.case_id}, mult_D={rec.mult_d}, "
            f"phi_zero={rec.phi_zero}, phi_pole={rec.phi_pole}, "
            f"R_pole={rec.r_pole}, R(z) -> {img}"
        )
    print(f"sigma(P_{args.level}) (class, depth, mult):")
    for cls, k, mult in table.entries:
        print(f"  ({cls}, {k}, {mult})")
    print(f"  (0, -, {table.zero_mult})")
    return EXIT_OK


def cmd_count(args) -> int:
    s = _resolve(args.fractal)
    t = tau(s, args.level)
    if args.format == "json":
        data = t.to_json()
        data["schema"] = "1"
        data["fractal"] = s.name
        data["level"] = args.level
        _print_json(data)
        return EXIT_OK
    if args.digits:
        print(t.digits10())
        return EXIT_OK
    if args.factored:
        print(str(t))
        return EXIT_OK
    if t.digits10() > 10_000:
        print(f"# value has {t.digits10()} digits; factored form:")
        print(str(t))
    else:
        print(t.value())
    return EXIT_OK


def cmd_verify(args) -> int:
    s = _resolve(args.fractal)
    checks: list[tuple[str, bool, str]] = []

    def record(name: str, ok: bool, detail: str = ""):
        checks.append((name, ok, detail))

    try:
        dd = derive(s)
        record("schur identity S = phi (P0 - R)", True, "verified during derivation")
    except DecimationError as e:
        print(f"error: decimation failed: {e}", file=sys.stderr)
        return EXIT_INVALID

    cap = args.max_level
    oracle_levels = [
        n
        for n in range(cap + 1)
        if vertex_count_formula(s, n) <= BRUTE_FORCE_SOFT_CAP
    ]
    skipped = [n for n in range(cap + 1) if n not in oracle_levels]
    if skipped:
        print(
            f"note: skipping brute force at levels {skipped} "
            f"(graphs above {BRUTE_FORCE_SOFT_CAP} vertices)",
            file=sys.stderr,
        )

    def oracle_check(n):
        g = build_level(s, n)
        return tau_bruteforce(g), tau(s, n, dd)

    threads = max_threads()
    if threads > 1 and len(oracle_levels) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(oracle_check, oracle_levels))
    else:
        results = [oracle_check(n) for n in oracle_levels]
    for n, (brute, fact) in zip(oracle_levels, results):
        ok = fact == brute
        record(f"tau oracle vs closed form, level {n}", ok, f"{brute}")

    for n in [n for n in oracle_levels if n >= 1][:2]:
        g = build_level(s, n)
        ok, t, rhs = verify_matrix_tree(g)
        record(f"matrix-tree identity on G_{n}", ok, f"tau={t}")

    for n in [n for n in oracle_levels if n >= 1][:2]:
        ok, detail = crosscheck_spectrum(dd, n)
        record(f"spectrum charpoly crosscheck, level {n}", ok, detail)

    sum_ok = True
    try:
        spectrum(dd, 30)
    except InconsistentSpectrumError as e:
        sum_ok = False
        record("spectrum sum rule, levels 0..30", False, str(e))
    if sum_ok:
        record("spectrum sum rule, levels 0..30", True, "")

    try:
        tau(s, 30, dd)
        record("integer assembly at level 30", True, "")
    except (AssemblyError, InconsistentSpectrumError) as e:
        record("integer assembly at level 30", False, str(e))

    failed = [c for c in checks if not c[1]]
    for name, ok, detail in checks:
        status = "PASS" if ok else "FAIL"
        suffix = f"  ({detail})" if detail else ""
        print(f"{status}  {name}{suffix}")
    return EXIT_OK if not failed else EXIT_INCONSISTENT


def cmd_entropy(args) -> int:
    s = _resolve(args.fractal)
    report = entropy(s, n_max=args.level, precision=args.prec)
    prec = args.prec
    with mpmath.workdps(prec):
        if args.format == "json":
            _print_json(
                {
                    "schema": "1",
                    "fractal": s.name,
                    "precision": prec,
                    "values": [[n, mpmath.nstr(c, prec)] for n, c in report.values],
                    "extrapolated": mpmath.nstr(report.extrapolated, prec),
                    "bounds_applicable": report.bounds_applicable,
                    "lower_bound": None
                    if report.lower_bound is None
                    else mpmath.nstr(report.lower_bound, prec),
                    "upper_bound": None
                    if report.upper_bound is None
                    else mpmath.nstr(report.upper_bound, prec),
                    "diffs_decreasing": report.diffs_decreasing,
                }
            )
            return EXIT_OK
        print(f"tree entropy of {s.name} (ln-based, {prec} digits)")
        for n, c in report.values:
            print(f"  c_{n:<3d} = {mpmath.nstr(c, prec)}")
        print(f"extrapolated: {mpmath.nstr(report.extrapolated, prec)}")
        if report.bounds_applicable:
            print(
                f"bounds: {mpmath.nstr(report.lower_bound, prec)} <= c <= "
                f"{mpmath.nstr(report.upper_bound, prec)}"
            )
        else:
            print("bounds: not applicable (|V0| = 2 or G1 is a tree)")
        print(f"|c_(n+1) - c_n| decreasing over last levels: {report.diffs_decreasing}")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fractal-trees",
        description="Exact spanning-tree counts on self-similar fractal graphs",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list builtin fractals").set_defaults(func=cmd_list)

    sp = sub.add_parser("info", help="structure summary and validation")
    sp.add_argument("fractal")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_info)

    sp = sub.add_parser("build", help="build and export a level graph")
    sp.add_argument("fractal")
    sp.add_argument("-n", "--level", type=int, default=1)
    sp.add_argument("--format", choices=("dot", "json"), default="json")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("decimate", help="derive phi, R and the exceptional cases")
    sp.add_argument("fractal")
    sp.add_argument("-n", "--level", type=int, default=1, help="spectrum preview level")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_decimate)

    sp = sub.add_parser("count", help="number of spanning trees of G_n")
    sp.add_argument("fractal")
    sp.add_argument("-n", "--level", type=int, required=True)
    sp.add_argument("--factored", action="store_true", help="print prime factorization")
    sp.add_argument("--digits", action="store_true", help="print decimal digit count")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("verify", help="run the exactness checks")
    sp.add_argument("fractal")
    sp.add_argument("--max-level", type=int, default=2)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("entropy", help="asymptotic complexity constant")
    sp.add_argument("fractal")
    sp.add_argument("-n", "--level", type=int, default=30)
    sp.add_argument("--prec", type=int, default=30)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_entropy)

    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if getattr(args, "level", 0) and args.level < 0:
        print("error: level must be nonnegative", file=sys.stderr)
        return EXIT_INVALID
    if getattr(args, "prec", 6) < 6:
        print("error: precision must be at least 6", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except (InvalidStructureError, KeyError, FileNotFoundError, ValueError) as e:
        if isinstance(e, (InconsistentSpectrumError, AssemblyError)):
            print(f"error: {e}", file=sys.stderr)
            return EXIT_INCONSISTENT
        msg = e.args[0] if e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INVALID
    except (InconsistentSpectrumError, AssemblyError, AssertionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
