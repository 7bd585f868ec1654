"""Command-line front door: build sets, emit count profiles, solve and
classify excluded progressions, and run the verification suite.

Exit codes: 0 on success, 1 on usage or domain errors, 2 when the
verification suite found a counterexample.  Output is byte-deterministic
for a given argument vector and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .builders import (
    FAMILIES,
    build_ef,
    build_evil_odious,
    build_family,
    build_xy,
)
from .intset import BoundedSet, ProgressionSpec
from .repfn import r1_profile, r2_profile, r3_profile
from .solver import (
    STATUS_COMPLETED,
    ClassificationRecord,
    classify_grid,
    forced_extend,
)
from .verify import CHECK_IDS, DEFAULT_SEED, run_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COUNTEREXAMPLE = 2

OUTPUT_DIR_ENV = "REPBAL_OUTPUT_DIR"

CSV_HEADER = "r,m,status,family,l,contradiction_at,forced_value"


@dataclass(frozen=True)
class RunConfig:
    """Defaults shared by the subcommands; all randomness is seeded, never timed."""

    bound: int = 4096
    m_max: int = 33
    r_max_factor: int = 2
    grid_bound: int = 2048
    output_dir: str | None = None
    format: str = "csv"
    seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        if self.bound < 4:
            raise ValueError(f"bound must be >= 4, got {self.bound}")
        if self.m_max < 2:
            raise ValueError(f"m_max must be >= 2, got {self.m_max}")


DEFAULTS = RunConfig()


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad flags by default; 2 is reserved for counterexamples."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _resolve_out(path: str | None, output_dir: str | None) -> Path | None:
    if path is None:
        return None
    base = output_dir or os.environ.get(OUTPUT_DIR_ENV) or "."
    p = Path(path)
    return p if p.is_absolute() else Path(base) / p


def _set_braces(s: BoundedSet) -> str:
    return "{" + ",".join(str(e) for e in s) + "}"


def _parse_family_token(token: str) -> tuple[str, int | None]:
    if token in ("xy", "uv"):
        return token, None
    name, sep, arg = token.partition(":")
    if sep and arg.isdigit() and (name in FAMILIES or name == "ef"):
        return name, int(arg)
    raise ValueError(
        f"unknown family {token!r}; expected s1t1:<l>, s2t2:<l>, s1t1+1:<l>, ef:<u>, xy or uv"
    )


def _build_sets(token: str, bound: int | None) -> list[tuple[str, BoundedSet]]:
    name, param = _parse_family_token(token)
    if name == "ef":
        if bound is not None:
            raise ValueError("ef:<u> fixes its own bound; drop --bound")
        e, f = build_ef(param)
        return [("E", e), ("F", f)]
    bound = DEFAULTS.bound if bound is None else bound
    if bound < 4:
        raise ValueError(f"bound must be >= 4, got {bound}")
    if name == "uv":
        u, v = build_evil_odious(bound)
        return [("U", u), ("V", v)]
    if name == "xy":
        x, y = build_xy(bound)
        return [("X", x), ("Y", y)]
    a, b, t = build_family(name, param, bound)
    return [("A", a), ("B", b), ("T", t)]


def cmd_build(args: argparse.Namespace) -> int:
    try:
        labeled = _build_sets(args.family, args.bound)
    except ValueError as exc:
        print(f"repbal build: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        payload = {
            label: {"bound": s.bound, "elements": s.elements()} for label, s in labeled
        }
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        blocks = [f"{label}:\n{s.to_text()}" for label, s in labeled]
        print("\n".join(blocks), end="")
    return EXIT_OK


def cmd_repfn(args: argparse.Namespace) -> int:
    if (args.family is None) == (args.input is None):
        print("repbal repfn: give exactly one of --family or --input", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.family is not None:
            labeled = _build_sets(args.family, args.bound)
            pair = [s for _, s in labeled[:2]]
            n_max = args.n_max if args.n_max is not None else pair[0].bound - 1
            pa = r2_profile(pair[0], n_max).values
            pb = r2_profile(pair[1], n_max).values
            lines = ["n,R2_A,R2_B,equal"]
            lines += [
                f"{n},{pa[n]},{pb[n]},{1 if pa[n] == pb[n] else 0}" for n in range(n_max + 1)
            ]
        else:
            s = BoundedSet.from_text(Path(args.input).read_text())
            n_max = args.n_max if args.n_max is not None else s.bound - 1
            p1 = r1_profile(s, n_max).values
            p2 = r2_profile(s, n_max).values
            p3 = r3_profile(s, n_max).values
            lines = ["n,R1,R2,R3"]
            lines += [f"{n},{p1[n]},{p2[n]},{p3[n]}" for n in range(n_max + 1)]
    except (ValueError, OSError) as exc:
        print(f"repbal repfn: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = "\n".join(lines) + "\n"
    out = _resolve_out(args.out, args.output_dir)
    if out is None:
        print(text, end="")
    else:
        out.write_text(text)
        print(f"wrote {len(lines) - 1} rows to {out}", file=sys.stderr)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        spec = ProgressionSpec(args.r, args.m)
        out = forced_extend(spec, args.bound)
    except ValueError as exc:
        print(f"repbal solve: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.emit == "json":
        payload = {
            "status": out.status,
            "r": spec.r,
            "m": spec.m,
            "bound": args.bound,
            "anchor": out.anchor,
            "a": out.a.elements(),
            "b": out.b.elements(),
            "excluded": out.excluded.elements(),
            "contradiction_at": out.contradiction_at,
            "forced_value": out.forced_value,
        }
        print(json.dumps(payload, sort_keys=True, indent=2))
        return EXIT_OK
    if out.status != STATUS_COMPLETED:
        print(f"contradiction: sum={out.contradiction_at} forced={out.forced_value}")
    print(f"A={_set_braces(out.a)}")
    print(f"B={_set_braces(out.b)}")
    return EXIT_OK


def classification_to_csv(records: list[ClassificationRecord]) -> str:
    def cell(value: int | str | None) -> str:
        return "" if value is None else str(value)

    lines = [CSV_HEADER]
    for rec in records:
        lines.append(
            ",".join(
                (
                    str(rec.r),
                    str(rec.m),
                    rec.status,
                    cell(rec.family),
                    cell(rec.l),
                    cell(rec.contradiction_at),
                    cell(rec.forced_value),
                )
            )
        )
    return "\n".join(lines) + "\n"


def parse_classification_csv(text: str) -> list[ClassificationRecord]:
    lines = text.splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"expected header {CSV_HEADER!r}")
    records = []
    for line in lines[1:]:
        r, m, status, family, l, contradiction_at, forced_value = line.split(",")
        records.append(
            ClassificationRecord(
                r=int(r),
                m=int(m),
                status=status,
                family=family or None,
                l=int(l) if l else None,
                contradiction_at=int(contradiction_at) if contradiction_at else None,
                forced_value=int(forced_value) if forced_value else None,
            )
        )
    return records


def cmd_classify(args: argparse.Namespace) -> int:
    if args.m_max < 2 or args.bound < 4 or args.r_max_factor < 0:
        print("repbal classify: need m-max >= 2, bound >= 4, r-max-factor >= 0", file=sys.stderr)
        return EXIT_USAGE
    records = classify_grid(args.m_max, args.r_max_factor, args.bound)
    text = classification_to_csv(records)
    out = _resolve_out(args.out, args.output_dir)
    if out is None:
        print(text, end="")
    else:
        out.write_text(text)
        print(f"wrote {len(records)} records to {out}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    only = None if args.lemma == "all" else args.lemma
    try:
        report = run_suite(args.bound_profile, seed=args.seed, only=only)
    except ValueError as exc:
        print(f"repbal verify: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for res in report.results:
        line = f"{'PASS' if res.ok else 'FAIL'} {res.check_id} ({res.passed}/{res.instances})"
        if res.first_failure is not None:
            line += f" first failure: {json.dumps(res.first_failure, sort_keys=True)}"
        print(line)
    out = _resolve_out(args.out, args.output_dir)
    if out is not None:
        out.write_text(json.dumps(report.to_json_dict(), sort_keys=True, indent=2) + "\n")
        print(f"wrote report to {out}", file=sys.stderr)
    if report.all_passed:
        print("suite: PASS")
        return EXIT_OK
    print("suite: FAIL")
    return EXIT_COUNTEREXAMPLE


def build_parser() -> _Parser:
    parser = _Parser(prog="repbal", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="construct a named set family")
    p_build.add_argument("family", help="s1t1:<l> | s2t2:<l> | s1t1+1:<l> | ef:<u> | xy | uv")
    p_build.add_argument("--bound", type=int, default=None, help=f"window size (default {DEFAULTS.bound})")
    p_build.add_argument("--format", choices=("text", "json"), default="text")
    p_build.set_defaults(handler=cmd_build)

    p_repfn = sub.add_parser("repfn", help="emit representation-count CSV")
    p_repfn.add_argument("--family", default=None, help="pair comparison for a built family")
    p_repfn.add_argument("--input", default=None, help="set fixture file for a single-set profile")
    p_repfn.add_argument("--bound", type=int, default=None)
    p_repfn.add_argument("--n-max", type=int, default=None)
    p_repfn.add_argument("--out", default=None)
    p_repfn.add_argument("--output-dir", default=None)
    p_repfn.set_defaults(handler=cmd_repfn)

    p_solve = sub.add_parser("solve", help="force-extend the partition for one (r, m)")
    p_solve.add_argument("--r", type=int, required=True)
    p_solve.add_argument("--m", type=int, required=True)
    p_solve.add_argument("--bound", type=int, default=DEFAULTS.bound)
    p_solve.add_argument("--emit", choices=("sets", "json"), default="sets")
    p_solve.set_defaults(handler=cmd_solve)

    p_classify = sub.add_parser("classify", help="sweep an (r, m) grid")
    p_classify.add_argument("--m-max", type=int, default=DEFAULTS.m_max)
    p_classify.add_argument("--r-max-factor", type=int, default=DEFAULTS.r_max_factor)
    p_classify.add_argument("--bound", type=int, default=DEFAULTS.grid_bound)
    p_classify.add_argument("--out", default=None)
    p_classify.add_argument("--output-dir", default=None)
    p_classify.set_defaults(handler=cmd_classify)

    p_verify = sub.add_parser("verify", help="run the verification suite")
    p_verify.add_argument("--lemma", default="all", choices=("all",) + CHECK_IDS)
    p_verify.add_argument("--bound-profile", default="quick", choices=("quick", "full"))
    p_verify.add_argument("--seed", type=int, default=DEFAULTS.seed)
    p_verify.add_argument("--out", default=None)
    p_verify.add_argument("--output-dir", default=None)
    p_verify.set_defaults(handler=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
