"""Acceptance suite: one test per shipped guarantee, one printed line each.

Run with `pytest tests/test_acceptance.py`; the PASS/FAIL criterion lines
print outside pytest's capture, so they are visible without -s.  Every
check is exact; the wall-clock budgets are asserted as part of the
criteria.
"""

import random
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from mm33.automorphism import cyclic_rotate
from mm33.brent import verify_brent
from mm33.factors import (
    BUILTIN_FACTOR_TEXT,
    Scheme,
    builtin_scheme,
    parse_factor_file,
    serialize_factor_file,
)
from mm33.kernel import multiply_via_schedule, multiply_via_scheme, naive_multiply
from mm33.recursion import RecursionConfig, multiply_recursive, predicted_counts
from mm33.ring import CountingRing, IntegerRing, Mat2Ring, PrimeField
from mm33.slp import (
    builtin_schedule,
    count_cost,
    emit_expanded_presentation,
    expand_to_scheme,
    output_assembly_costs,
)

from oracles import expanded_forms, random_matrix, random_scheme

GOLDEN = Path(__file__).parent / "data" / "expanded_builtin.txt"


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(name: str, budget: float | None = None):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"FAIL {name}", flush=True)
            raise
        elapsed = time.perf_counter() - start
        with capsys.disabled():
            print(f"PASS {name} ({elapsed:.2f}s)", flush=True)
        if budget is not None:
            assert elapsed < budget, f"{name}: {elapsed:.2f}s exceeded {budget}s budget"

    return run


def test_criterion_1_factor_reconstruction(criterion):
    with criterion("criterion 1: schedule expands to the factor table", budget=1.0):
        expanded = expand_to_scheme(builtin_schedule())
        reference = builtin_scheme()
        coefficients = 0
        for got_rows, want_rows in zip(
            (expanded.u, expanded.v, expanded.w),
            (reference.u, reference.v, reference.w),
        ):
            for got, want in zip(got_rows, want_rows):
                for x, y in zip(got, want):
                    assert x == y
                    coefficients += 1
        assert coefficients == 3 * 23 * 9 == 621


def test_criterion_2_brent_certification_and_mutations(criterion):
    with criterion("criterion 2a: 729 equations hold over Z, mod 2, mod 3", budget=1.0):
        for modulus in (0, 2, 3):
            report = verify_brent(builtin_scheme(), modulus)
            assert report.passed
            assert len(list(report.failures)) == 0

    with criterion("criterion 2b: zeroing any nonzero coefficient breaks it", budget=10.0):
        s = builtin_scheme()
        mutated = 0
        for factor_name in ("u", "v", "w"):
            rows = getattr(s, factor_name)
            for r in range(23):
                for c in range(9):
                    if rows[r][c] == 0:
                        continue
                    new_rows = list(rows)
                    vec = list(new_rows[r])
                    vec[c] = 0
                    new_rows[r] = tuple(vec)
                    parts = {"u": s.u, "v": s.v, "w": s.w}
                    parts[factor_name] = tuple(new_rows)
                    broken = Scheme(23, parts["u"], parts["v"], parts["w"])
                    assert not verify_brent(broken).passed
                    mutated += 1
        assert mutated > 0


def test_criterion_3_cost_accounting(criterion):
    with criterion("criterion 3: costs 13 + 13 + 7 + 23 = 56 adds, 23 mults"):
        report = count_cost(builtin_schedule())
        assert report.left_input_adds == 13
        assert report.right_input_adds == 13
        assert report.output_shared_adds == 7
        assert report.output_final_adds == 23
        assert report.total_adds == 56
        assert report.mult_count == 23
        assert output_assembly_costs(builtin_schedule()) == (2, 4, 3, 2, 3, 2, 3, 2, 2)


def test_criterion_4_operation_count_instrumentation(criterion):
    with criterion("criterion 4: instrumented kernel run uses 23 mults, 56 add/subs"):
        ring = CountingRing()
        rng = random.Random(4)
        a = random_matrix(rng, ring, 3)
        b = random_matrix(rng, ring, 3)
        multiply_via_schedule(builtin_schedule(), a, b, ring)
        assert ring.counts.mults == 23
        assert ring.counts.additions == 56


def test_criterion_5_oracle_equivalence(criterion):
    with criterion("criterion 5: 1000 random trials x 4 rings match naive", budget=5.0):
        schedule = builtin_schedule()
        for ring in (IntegerRing(), PrimeField(2), PrimeField(3), Mat2Ring()):
            rng = random.Random(5)
            for _ in range(1000):
                a = random_matrix(rng, ring, 3)
                b = random_matrix(rng, ring, 3)
                assert multiply_via_schedule(schedule, a, b, ring) == naive_multiply(a, b, 3)


def test_criterion_6_noncommutative_order(criterion):
    with criterion("criterion 6: order-sensitive 2x2 matrix inputs still match"):
        ring = Mat2Ring()
        scheme = builtin_scheme()
        rng = random.Random(2024)
        fixture = None
        for _ in range(200):
            a = random_matrix(rng, ring, 3)
            b = random_matrix(rng, ring, 3)
            forms = expanded_forms(scheme, a, b)
            if all(left * right != right * left for left, right in forms):
                fixture = (a, b)
                break
        assert fixture is not None, "no fully order-sensitive inputs found"
        a, b = fixture
        want = naive_multiply(a, b, 3)
        assert multiply_via_schedule(builtin_schedule(), a, b, ring) == want
        assert multiply_via_scheme(scheme, a, b, ring) == want


def test_criterion_7_expanded_presentation(criterion):
    with criterion("criterion 7: expanded presentation matches the golden file"):
        text = emit_expanded_presentation(builtin_scheme())
        assert text.split() == GOLDEN.read_text().split()  # token-for-token
        assert text == GOLDEN.read_text()  # and in fact byte-for-byte
        # one-based index shift: line r starts with p{r+1}
        for r, line in enumerate(text.splitlines()[:23]):
            assert line.startswith(f"p{r + 1:02d} = ")


def test_criterion_8_automorphism(criterion):
    with criterion("criterion 8a: rotated scheme passes full certification"):
        rotated = cyclic_rotate(builtin_scheme())
        for modulus in (0, 2, 3):
            assert verify_brent(rotated, modulus).passed

    with criterion("criterion 8b: triple rotation is the identity (100 schemes)"):
        rng = random.Random(8)
        for _ in range(100):
            scheme = random_scheme(rng, rng.randint(1, 8))
            assert cyclic_rotate(cyclic_rotate(cyclic_rotate(scheme))) == scheme


def test_criterion_9_recursion(criterion):
    with criterion("criterion 9a: recursive equals naive, n in 1..10 and 27", budget=30.0):
        for ring in (IntegerRing(), PrimeField(3)):
            for n in (*range(1, 11), 27):
                rng = random.Random(n)
                a = random_matrix(rng, ring, n)
                b = random_matrix(rng, ring, n)
                config = RecursionConfig(cutoff=1 if n < 27 else 3)
                assert multiply_recursive(a, b, n, ring, config) == naive_multiply(a, b, n)

    with criterion("criterion 9b: instrumented counts match predictions", budget=30.0):
        assert predicted_counts(1) == (23, 56)
        assert predicted_counts(2) == (529, 1792)
        assert predicted_counts(3)[0] == 12167
        for k in (1, 2, 3):
            ring = CountingRing()
            rng = random.Random(k)
            n = 3 ** k
            a = random_matrix(rng, ring, n)
            b = random_matrix(rng, ring, n)
            multiply_recursive(a, b, n, ring, RecursionConfig(cutoff=1))
            assert (ring.counts.mults, ring.counts.additions) == predicted_counts(k)


def test_criterion_10_format_round_trip(criterion):
    with criterion("criterion 10: factor-file round trips and canonical bytes"):
        assert parse_factor_file(serialize_factor_file(builtin_scheme())) == builtin_scheme()
        assert serialize_factor_file(builtin_scheme()).split() == BUILTIN_FACTOR_TEXT.split()
        assert serialize_factor_file(builtin_scheme()) == BUILTIN_FACTOR_TEXT
        rng = random.Random(10)
        for _ in range(100):
            scheme = random_scheme(rng, rng.randint(1, 9))
            assert parse_factor_file(serialize_factor_file(scheme)) == scheme
