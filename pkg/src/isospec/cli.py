"""Command line front end.

Subcommands mirror the library layers: theta/rational expose shell counting,
spectrum/genfun the spectral side, conjugate/enumerate the subgroup
bookkeeping, and search/tables/verify/noncyclic the isospectrality hunts.
All output is deterministic for a fixed command line; thread count changes
scheduling only, never content or order.

Exit codes: 0 success, 1 validation or domain failure (bad parameter values,
verification mismatch), 2 usage errors from argument parsing.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

try:
    import tomllib
except ModuleNotFoundError:  # python 3.10
    import tomli as tomllib  # type: ignore[no-redef]

from .isospectral_search import (
    SearchConfig,
    UMode,
    family_report,
    noncyclic_example_check,
    search,
)
from .reference_tables import TABLES, table_search, verify_tables
from .spectrum import (
    SpaceKind,
    cpn,
    even_sphere,
    hp1,
    odd_sphere,
    space_lattice,
    spectral_generating_function,
    spectrum_table,
)
from .theta_counting import ehrhart_form, theta_truncated
from .weight_lattice import (
    Family,
    GroupFamily,
    canonical_form,
    enumerate_representatives,
    is_conjugate,
    make_lattice,
)

_FORMATS = ("json", "csv", "md")


def _space_type(text: str) -> SpaceKind:
    low = text.strip().lower()
    if low == "hp1":
        return hp1()
    if low.startswith("cp:"):
        return cpn(int(low[3:]))
    if low.startswith("s:"):
        d = int(low[2:])
        if d < 2:
            raise ValueError(f"sphere dimension must be at least 2, got {d}")
        return even_sphere(d // 2) if d % 2 == 0 else odd_sphere((d + 1) // 2)
    raise ValueError(f"unknown space {text!r}; use cp:<n>, s:<d>, or hp1")


def _family_type(text: str) -> Family:
    try:
        return Family[text.strip().upper()]
    except KeyError:
        raise ValueError(f"unknown family {text!r}; use A, B, C2, or D") from None


def _csv_ints(text: str) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("expected a comma separated list of integers")
    return tuple(int(p) for p in parts)


def _resolve_threads(value: Optional[int], cfg: dict) -> int:
    if value is not None:
        return max(1, value)
    if "threads" in cfg:
        return max(1, int(cfg["threads"]))
    env = os.environ.get("ISOSPEC_THREADS", "").strip()
    if env:
        return max(1, int(env))
    return 1


def _denominator_text(denominator: Sequence[tuple[int, int]]) -> str:
    parts = []
    for e, p in denominator:
        base = "(1-z)" if e == 1 else f"(1-z^{e})"
        parts.append(base if p == 1 else f"{base}^{p}")
    return " ".join(parts) if parts else "1"


def _ints_line(values: Sequence[int]) -> str:
    return ",".join(str(v) for v in values)


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_theta(args: argparse.Namespace, cfg: dict) -> int:
    fam = GroupFamily(args.family, args.n)
    lattice = make_lattice(fam, args.q, args.s, u=args.u, even_sublattice=args.even)
    if args.terms < 1:
        raise ValueError(f"need at least one term, got {args.terms}")
    series = theta_truncated(lattice, args.terms)
    print(_ints_line(series.coeffs))
    return 0


def _cmd_rational(args: argparse.Namespace, cfg: dict) -> int:
    fam = GroupFamily(args.family, args.n)
    lattice = make_lattice(fam, args.q, args.s, even_sublattice=args.even)
    form = ehrhart_form(lattice)
    if args.format == "json":
        print(
            json.dumps(
                {"q": form.q, "rank": form.rank, "numerator": list(form.numerator)},
                indent=2,
            )
        )
    elif args.format == "csv":
        print("q,rank,numerator")
        print(f"{form.q},{form.rank},{' '.join(map(str, form.numerator))}")
    else:
        print(f"q: {form.q}")
        print(f"rank: {form.rank}")
        print("numerator: " + _ints_line(form.numerator))
        print(f"denominator: (1-z^{form.q})^{form.rank + 1}")
    return 0


def _cmd_spectrum(args: argparse.Namespace, cfg: dict) -> int:
    lattice = space_lattice(args.space, args.q, args.s, u=args.u)
    table = spectrum_table(lattice, args.space, args.levels)
    if args.format == "json":
        payload = [
            {"k": k, "eigenvalue": lam, "multiplicity": m}
            for k, lam, m in table.entries
        ]
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        print("k,eigenvalue,multiplicity")
        for k, lam, m in table.entries:
            print(f"{k},{lam},{m}")
    else:
        print("| k | eigenvalue | multiplicity |")
        print("|---:|---:|---:|")
        for k, lam, m in table.entries:
            print(f"| {k} | {lam} | {m} |")
    return 0


def _cmd_genfun(args: argparse.Namespace, cfg: dict) -> int:
    lattice = space_lattice(args.space, args.q, args.s, u=args.u)
    gf = spectral_generating_function(lattice, args.space)
    terms = args.terms
    if terms is None:
        terms = 2 * (args.space.n + 1) * args.q
    if terms < 1:
        raise ValueError(f"need at least one term, got {terms}")
    series = gf.series(terms)
    exact = gf.numerator is not None
    if args.format == "json":
        print(
            json.dumps(
                {
                    "exact": exact,
                    "numerator": list(gf.numerator) if exact else None,
                    "denominator": [list(t) for t in gf.denominator],
                    "series": list(series),
                },
                indent=2,
            )
        )
    elif args.format == "csv":
        print("k,coefficient")
        for k, c in enumerate(series):
            print(f"{k},{c}")
    else:
        print(f"exact: {'yes' if exact else 'no'}")
        if exact:
            print("numerator: " + _ints_line(gf.numerator))
            print("denominator: " + _denominator_text(gf.denominator))
        print("series: " + _ints_line(series))
    return 0


def _cmd_conjugate(args: argparse.Namespace, cfg: dict) -> int:
    fam = GroupFamily(args.family, args.n)
    if args.s2 is not None:
        print("true" if is_conjugate(fam, args.q, args.s, args.s2) else "false")
    else:
        print(_ints_line(canonical_form(fam, args.q, args.s)))
    return 0


def _cmd_enumerate(args: argparse.Namespace, cfg: dict) -> int:
    fam = GroupFamily(args.family, args.n)
    for rep in enumerate_representatives(fam, args.n, args.q):
        print(_ints_line(rep))
    return 0


def _cmd_search(args: argparse.Namespace, cfg: dict) -> int:
    if args.qmax is None:
        raise ValueError("qmax is required (flag --qmax or config key qmax)")
    config = SearchConfig(
        space=args.space,
        q_range=(args.qmin, args.qmax),
        u_mode=UMode(args.mode),
        depth_factor=args.depth_factor,
    )
    found = search(config, threads=_resolve_threads(args.threads, cfg))
    print(family_report(found, format=args.format))
    return 0


def _cmd_tables(args: argparse.Namespace, cfg: dict) -> int:
    found = table_search(
        args.table, qmax=args.qmax, threads=_resolve_threads(args.threads, cfg)
    )
    print(family_report(found, format=args.format))
    return 0


def _cmd_verify(args: argparse.Namespace, cfg: dict) -> int:
    numbers = sorted(TABLES) if args.table == "all" else [int(args.table)]
    threads = _resolve_threads(args.threads, cfg)
    failed = False
    for number in numbers:
        report = verify_tables(number, qmax=args.qmax, threads=threads)
        if report.ok:
            print(f"table {number} (q<={report.qmax}): ok, {report.found} families")
        else:
            failed = True
            print(
                f"table {number} (q<={report.qmax}): MISMATCH,"
                f" {report.expected} expected, {report.found} found"
            )
            for line in report.missing:
                print(f"  missing: {line}")
            for line in report.extra:
                print(f"  extra: {line}")
    return 1 if failed else 0


def _cmd_noncyclic(args: argparse.Namespace, cfg: dict) -> int:
    report = noncyclic_example_check(
        one_norm_depth=args.depth, two_norm_budget=args.budget
    )
    ok = sum(1 for _, _, good in report.pairing if good)
    print(
        f"one-norm theta equal to depth {report.one_norm_depth}:"
        f" {'yes' if report.one_norm_equal else 'no'}"
    )
    print(
        f"two-norm theta equal up to {report.two_norm_budget}:"
        f" {'yes' if report.two_norm_equal else 'no'}"
    )
    print(f"eigenvalue-matched element pairs: {ok}/{len(report.pairing)}")
    print(f"pairing covers both groups: {'yes' if report.bijection_complete else 'no'}")
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# parser assembly


def _add_format(sp: argparse.ArgumentParser, cfg: dict) -> None:
    sp.add_argument(
        "--format",
        choices=_FORMATS,
        default=cfg.get("format", "md"),
        help="output format (default md)",
    )


def _add_family_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--family", type=_family_type, required=True, help="A, B, C2, or D")
    sp.add_argument("--n", type=int, required=True, help="family rank")
    sp.add_argument("--q", type=int, required=True, help="cyclic group order")


def _add_space_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument(
        "--space", type=_space_type, required=True, help="cp:<n>, s:<d>, or hp1"
    )
    sp.add_argument("--q", type=int, required=True, help="cyclic group order")
    sp.add_argument("--s", type=_csv_ints, required=True, help="exponent vector")
    sp.add_argument("--u", type=int, default=0, help="character exponent (default 0)")


def _build_parser(cfg: dict) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isospec",
        description="spectra of cyclic quotients via congruence lattice counting",
    )
    parser.add_argument("--config", help="TOML file with default option values")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help=argparse.SUPPRESS)

    sp = sub.add_parser(
        "theta", parents=[common], help="theta series of a congruence lattice"
    )
    _add_family_args(sp)
    sp.add_argument("--s", type=_csv_ints, required=True, help="exponent vector")
    sp.add_argument("--u", type=int, default=0, help="character exponent (default 0)")
    sp.add_argument("--even", action="store_true", help="even-sum sublattice")
    sp.add_argument("--terms", type=int, default=8, help="coefficients to print")
    sp.set_defaults(handler=_cmd_theta)

    sp = sub.add_parser(
        "rational", parents=[common], help="rational form of the counting function"
    )
    _add_family_args(sp)
    sp.add_argument("--s", type=_csv_ints, required=True, help="exponent vector")
    sp.add_argument("--even", action="store_true", help="even-sum sublattice")
    _add_format(sp, cfg)
    sp.set_defaults(handler=_cmd_rational)

    sp = sub.add_parser(
        "spectrum", parents=[common], help="eigenvalues and multiplicities"
    )
    _add_space_args(sp)
    sp.add_argument("--levels", type=int, default=10, help="levels k to list")
    _add_format(sp, cfg)
    sp.set_defaults(handler=_cmd_spectrum)

    sp = sub.add_parser(
        "genfun", parents=[common], help="multiplicity generating function"
    )
    _add_space_args(sp)
    sp.add_argument(
        "--terms", type=int, default=None, help="series length (default 2(n+1)q)"
    )
    _add_format(sp, cfg)
    sp.set_defaults(handler=_cmd_genfun)

    sp = sub.add_parser(
        "conjugate",
        parents=[common],
        help="canonical form of s, or conjugacy test against a second vector",
    )
    _add_family_args(sp)
    sp.add_argument("--s", type=_csv_ints, required=True, help="exponent vector")
    sp.add_argument("--s2", type=_csv_ints, default=None, help="second vector")
    sp.set_defaults(handler=_cmd_conjugate)

    sp = sub.add_parser(
        "enumerate", parents=[common], help="conjugacy class representatives"
    )
    _add_family_args(sp)
    sp.set_defaults(handler=_cmd_enumerate)

    sp = sub.add_parser(
        "search", parents=[common], help="exhaustive isospectral family search"
    )
    sp.add_argument(
        "--space", type=_space_type, required=True, help="cp:<n>, s:<d>, or hp1"
    )
    sp.add_argument("--qmin", type=int, default=cfg.get("qmin", 1))
    sp.add_argument("--qmax", type=int, default=cfg.get("qmax"))
    sp.add_argument(
        "--mode",
        choices=("untwisted", "twisted"),
        default=cfg.get("mode", "untwisted"),
        help="character range (default untwisted)",
    )
    sp.add_argument(
        "--depth-factor", type=int, default=cfg.get("depth_factor", 2), dest="depth_factor"
    )
    sp.add_argument("--threads", type=int, default=None)
    _add_format(sp, cfg)
    sp.set_defaults(handler=_cmd_search)

    sp = sub.add_parser(
        "tables", parents=[common], help="families behind one bundled table"
    )
    sp.add_argument("--table", type=int, choices=sorted(TABLES), required=True)
    sp.add_argument("--qmax", type=int, default=None)
    sp.add_argument("--threads", type=int, default=None)
    _add_format(sp, cfg)
    sp.set_defaults(handler=_cmd_tables)

    sp = sub.add_parser(
        "verify", parents=[common], help="diff search output against bundled tables"
    )
    sp.add_argument(
        "--table",
        choices=[str(k) for k in sorted(TABLES)] + ["all"],
        default="all",
    )
    sp.add_argument("--qmax", type=int, default=None)
    sp.add_argument("--threads", type=int, default=None)
    sp.set_defaults(handler=_cmd_verify)

    sp = sub.add_parser(
        "noncyclic", parents=[common], help="check the fixed non-cyclic example pair"
    )
    sp.add_argument("--depth", type=int, default=60, help="one-norm depth")
    sp.add_argument("--budget", type=int, default=50, help="two-norm budget")
    sp.set_defaults(handler=_cmd_noncyclic)

    return parser


def _load_config(path: str) -> dict:
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    cfg = {k.replace("-", "_"): v for k, v in data.items() if not isinstance(v, dict)}
    section = data.get("search")
    if isinstance(section, dict):
        cfg.update({k.replace("-", "_"): v for k, v in section.items()})
    return cfg


def run(argv: Optional[Sequence[str]] = None) -> int:
    args_list = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(args_list)
    cfg: dict = {}
    if known.config is not None:
        try:
            cfg = _load_config(known.config)
        except (OSError, tomllib.TOMLDecodeError) as exc:
            print(f"error: cannot load config: {exc}", file=sys.stderr)
            return 1
    parser = _build_parser(cfg)
    try:
        args = parser.parse_args(args_list)
    except SystemExit as exc:
        if exc.code in (0, None):
            return 0
        return int(exc.code)
    try:
        return args.handler(args, cfg)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
