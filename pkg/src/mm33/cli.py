"""Command-line interface.

Commands: verify, cost, expand, transform, multiply, bench, selftest.
Exit status 0 on success, 1 on verification failure, 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from .automorphism import cyclic_rotate
from .brent import failure_lines, verify_brent
from .factors import (
    BUILTIN_FACTOR_TEXT,
    FactorFileError,
    Scheme,
    builtin_scheme,
    parse_factor_file,
    serialize_factor_file,
)
from .kernel import multiply_via_schedule, naive_multiply
from .recursion import DEFAULT_CUTOFF, RecursionConfig, multiply_recursive
from .ring import CountingRing, IntegerRing, Mat2Ring, PrimeField
from .slp import (
    builtin_schedule,
    count_cost,
    emit_expanded_presentation,
    expand_to_scheme,
    output_assembly_costs,
)

DEFAULT_SEED = 20200829
DEFAULT_TRIALS = 1000


class InputError(Exception):
    """Bad command input (unreadable or malformed file, size mismatch)."""


def _load_scheme(path: str | None, use_builtin: bool) -> Scheme:
    if use_builtin:
        return builtin_scheme()
    if path is None:
        raise InputError("no input: give a factor file or pass --builtin")
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return parse_factor_file(text)
    except FactorFileError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_verify(args) -> int:
    scheme = _load_scheme(args.input, args.builtin)
    moduli = args.mod if args.mod else [0, 2, 3]
    try:
        reports = [verify_brent(scheme, m) for m in moduli]
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    total = 3 ** 6
    segments = []
    for rep in reports:
        if rep.modulus == 0:
            segments.append(f"{total - len(rep.failures)}/{total} equations hold over Z")
        else:
            status = "pass" if rep.passed else f"FAIL ({len(rep.failures)} failures)"
            segments.append(f"{rep.label}: {status}")
    print("; ".join(segments))
    for rep in reports:
        if not rep.passed:
            print(f"failures {rep.label}:")
            for line in failure_lines(rep):
                print(line)
    return 0 if all(rep.passed for rep in reports) else 1


def cmd_cost(args) -> int:
    schedule = builtin_schedule()
    report = count_cost(schedule)
    if args.json:
        payload = report.as_dict()
        payload["output_assembly_costs"] = list(output_assembly_costs(schedule))
        print(json.dumps(payload, indent=2))
        return 0
    print(f"left input additions:    {report.left_input_adds}")
    print(f"right input additions:   {report.right_input_adds}")
    print(f"shared output additions: {report.output_shared_adds}")
    print(f"final output additions:  {report.output_final_adds}")
    print(f"output additions:        {report.output_adds}")
    print(f"total additions:         {report.total_adds}")
    print(f"multiplications:         {report.mult_count}")
    print(f"total scalar operations: {report.total_ops}")
    print(f"final assembly per output: {' '.join(map(str, output_assembly_costs(schedule)))}")
    return 0


def cmd_expand(args) -> int:
    scheme = _load_scheme(args.input, args.builtin)
    _write_output(emit_expanded_presentation(scheme), args.output)
    return 0


def cmd_transform(args) -> int:
    scheme = _load_scheme(args.input, args.builtin)
    for _ in range(args.times):
        scheme = cyclic_rotate(scheme)
    _write_output(serialize_factor_file(scheme), args.output)
    return 0


def _read_matrix(path: str) -> tuple[list[int], int]:
    try:
        tokens = Path(path).read_text().split()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc
    if not values:
        raise InputError(f"{path}: empty matrix file")
    n, entries = values[0], values[1:]
    if n < 1 or len(entries) != n * n:
        raise InputError(
            f"{path}: expected n followed by n*n entries, got n={n} with {len(entries)} entries"
        )
    return entries, n


def _format_matrix(entries, n: int) -> str:
    lines = [str(n)]
    for i in range(n):
        lines.append(" ".join(str(x) for x in entries[i * n:(i + 1) * n]))
    return "\n".join(lines) + "\n"


def _recursion_config(cutoff: int) -> RecursionConfig:
    try:
        return RecursionConfig(cutoff)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_multiply(args) -> int:
    a, n = _read_matrix(args.a)
    b, m = _read_matrix(args.b)
    if n != m:
        raise InputError(f"size mismatch: {args.a} is {n}x{n}, {args.b} is {m}x{m}")
    product = multiply_recursive(a, b, n, IntegerRing(), _recursion_config(args.cutoff))
    _write_output(_format_matrix(product, n), args.output)
    return 0


def cmd_bench(args) -> int:
    rng = random.Random(args.seed)
    ring = IntegerRing()
    config = _recursion_config(args.cutoff)
    try:
        sizes = [int(s) for s in args.sizes.split(",")]
    except ValueError as exc:
        raise InputError(f"--sizes: {exc}") from exc
    if any(n < 1 for n in sizes):
        raise InputError(f"--sizes entries must be positive, got {args.sizes}")
    print(f"{'n':>6} {'naive (s)':>12} {'recursive (s)':>14} {'ratio':>7}")
    for n in sizes:
        a = [ring.random(rng) for _ in range(n * n)]
        b = [ring.random(rng) for _ in range(n * n)]
        t0 = time.perf_counter()
        want = naive_multiply(a, b, n)
        t_naive = time.perf_counter() - t0
        t0 = time.perf_counter()
        got = multiply_recursive(a, b, n, ring, config)
        t_recursive = time.perf_counter() - t0
        if got != want:
            print(f"{n:>6} MISMATCH")
            return 1
        ratio = t_naive / t_recursive if t_recursive else float("inf")
        print(f"{n:>6} {t_naive:>12.4f} {t_recursive:>14.4f} {ratio:>7.2f}")
    return 0


def _selftest_checks(scheme: Scheme, schedule, rng: random.Random, trials: int):
    """Yield (name, passed) for every check of the verification pipeline."""
    yield (
        "factor reconstruction from straight-line program",
        expand_to_scheme(schedule) == scheme,
    )
    yield (
        "canonical factor-file round trip",
        serialize_factor_file(builtin_scheme()) == BUILTIN_FACTOR_TEXT
        and parse_factor_file(serialize_factor_file(scheme)) == scheme,
    )
    report = count_cost(schedule)
    yield (
        "straight-line costs 13 + 13 + 30",
        (
            report.left_input_adds == 13
            and report.right_input_adds == 13
            and report.output_adds == 30
            and report.total_adds == 56
            and report.mult_count == 23
        ),
    )
    for modulus in (0, 2, 3):
        label = "over Z" if modulus == 0 else f"mod {modulus}"
        yield (f"729 Brent equations {label}", verify_brent(scheme, modulus).passed)

    counting = CountingRing()
    a = [counting.random(rng) for _ in range(9)]
    b = [counting.random(rng) for _ in range(9)]
    got = multiply_via_schedule(schedule, a, b, counting)
    counted_ok = (
        counting.counts.mults == 23
        and counting.counts.additions == 56
        and got == naive_multiply(a, b, 3)
    )
    yield ("kernel operation counts 56 additions, 23 multiplications", counted_ok)

    rings = [
        ("bounded integers", IntegerRing()),
        ("F2", PrimeField(2)),
        ("F3", PrimeField(3)),
        ("2x2 integer matrices", Mat2Ring()),
    ]
    for name, ring in rings:
        ok = True
        for _ in range(trials):
            a = [ring.random(rng) for _ in range(9)]
            b = [ring.random(rng) for _ in range(9)]
            if multiply_via_schedule(schedule, a, b, ring) != naive_multiply(a, b, 3):
                ok = False
                break
        yield (f"randomized multiply over {name} ({trials} trials)", ok)


def run_selftest(scheme=None, schedule=None, seed: int = DEFAULT_SEED,
                 trials: int = DEFAULT_TRIALS, out=None) -> int:
    """Run every pipeline check; returns 0 only if all pass."""
    out = out or sys.stdout
    scheme = scheme if scheme is not None else builtin_scheme()
    schedule = schedule if schedule is not None else builtin_schedule()
    rng = random.Random(seed)
    all_ok = True
    for name, passed in _selftest_checks(scheme, schedule, rng, trials):
        print(("ok   " if passed else "FAIL ") + name, file=out)
        all_ok &= passed
    print("selftest: " + ("all checks passed" if all_ok else "FAILURES detected"), file=out)
    return 0 if all_ok else 1


def cmd_selftest(args) -> int:
    return run_selftest(seed=args.seed, trials=args.trials)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mm33",
        description="3x3 matrix multiplication with 23 products and 56 additions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_scheme_input(p):
        p.add_argument("input", nargs="?", help="factor file path")
        p.add_argument("--builtin", action="store_true", help="use the built-in scheme")

    p = sub.add_parser("verify", help="certify a scheme against the Brent equations")
    add_scheme_input(p)
    p.add_argument("--mod", type=int, action="append",
                   help="modulus to check (0 = integers; repeatable; default 0, 2, 3)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cost", help="print the straight-line cost of the built-in schedule")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("expand", help="print a scheme as explicit bilinear products")
    add_scheme_input(p)
    p.add_argument("--output", "-o", help="write to file instead of stdout")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("transform", help="apply tensor symmetries and write a factor file")
    add_scheme_input(p)
    p.add_argument("--cyclic", action="store_true", required=True,
                   help="apply the cyclic rotation (U,V,W) -> (V,W^T,U^T)")
    p.add_argument("--times", type=int, default=1)
    p.add_argument("--output", "-o", help="write to file instead of stdout")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("multiply", help="multiply two integer matrix files")
    p.add_argument("a", help="matrix file: first token n, then n*n row-major entries")
    p.add_argument("b", help="matrix file")
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    p.add_argument("--output", "-o", help="write to file instead of stdout")
    p.set_defaults(func=cmd_multiply)

    p = sub.add_parser("bench", help="time naive vs recursive multiplication")
    p.add_argument("--sizes", default="9,27,81", help="comma-separated sizes")
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("selftest", help="run the full verification pipeline")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
