import random

import pytest

from paritydt.boolfn import BooleanFunction, parse_function_spec, restrict
from paritydt.certify import (
    EssentialSet,
    ParityOracle,
    essential_certificate_set,
    evaluate_via_certificates,
    verify_essential_set,
)
from paritydt.errors import BudgetExceededError, DimensionError, DomainError
from paritydt.gf2 import Coset, Gf2Matrix, Gf2Vector, solve
from paritydt.parity import c0_xor, c1_xor, parity_certificate


def run_and_check(f, xb):
    """Run the evaluator and enforce the query budget and trace shape."""
    n = f.arity
    oracle = ParityOracle(Gf2Vector(n, xb))
    value, queries, trace = evaluate_via_certificates(f, oracle)
    assert value == f.value_at(xb)
    assert queries == oracle.queries == sum(len(s.rows) for s in trace)
    if f.is_constant():
        assert queries == 0 and trace == []
        return trace
    k0, k1 = c0_xor(f), c1_xor(f)
    assert len(trace) <= k0
    for step in trace:
        assert len(step.rows) <= k1
        assert len(step.rows) == step.certificate.coset.codim
        for row, ans in zip(step.rows, step.answers):
            assert ans == Gf2Vector(n, xb).dot(row)
    assert queries <= k0 * k1
    # matched steps are final and accept; mismatched steps shrink the domain
    for step in trace[:-1]:
        assert not step.matched
    last = trace[-1]
    if value == 1 and last.matched:
        assert last.certificate.coset._contains_bits(xb)
    for step in trace:
        if not step.matched:
            assert step.domain_after is not None
            assert step.domain_after._contains_bits(xb)
            assert step.domain_after.codim > step.domain.codim
    return trace


def check_decrease_chain(f, xb, trace):
    """A 0-input's certificate size drops by one or more per round."""
    x = Gf2Vector(f.arity, xb)
    sizes = [parity_certificate(restrict(f, step.domain), x)[0] for step in trace]
    for a, b in zip(sizes, sizes[1:]):
        assert b <= a - 1
    if trace:
        final = restrict(f, trace[-1].domain_after)
        assert final.local.is_constant() and final.local.table == 0


# ---------------------------------------------------------------------------
# evaluator
# ---------------------------------------------------------------------------

def test_evaluator_exhaustive_small():
    for n in (1, 2, 3):
        for t in range(1 << (1 << n)):
            f = BooleanFunction(n, t)
            for xb in range(1 << n):
                trace = run_and_check(f, xb)
                if f.value_at(xb) == 0 and not f.is_constant():
                    check_decrease_chain(f, xb, trace)


def test_evaluator_random_larger():
    rnd = random.Random(20240817)
    for n, count in ((4, 60), (5, 40)):
        for _ in range(count):
            f = BooleanFunction(n, rnd.getrandbits(1 << n))
            xb = rnd.getrandbits(n)
            trace = run_and_check(f, xb)
            if f.value_at(xb) == 0 and not f.is_constant():
                check_decrease_chain(f, xb, trace)


def test_evaluator_or2_query_budget():
    # both hidden inputs: never more than c0*c1 = 2 queries
    f = parse_function_spec("zoo:or:2")
    for xb in range(4):
        oracle = ParityOracle(Gf2Vector(2, xb))
        value, queries, _ = evaluate_via_certificates(f, oracle)
        assert value == f.value_at(xb)
        assert queries <= 2


def test_evaluator_validation():
    with pytest.raises(DimensionError):
        evaluate_via_certificates(parse_function_spec("zoo:or:2"), ParityOracle(Gf2Vector(3, 0)))
    with pytest.raises(BudgetExceededError):
        evaluate_via_certificates(BooleanFunction(11, 0), ParityOracle(Gf2Vector(11, 0)))


def test_oracle_counts_and_checks_width():
    oracle = ParityOracle(Gf2Vector.from_string("101"))
    assert oracle.width == 3
    assert oracle.query(Gf2Vector.from_string("100")) == 1
    assert oracle.query(Gf2Vector.from_string("011")) == 1
    assert oracle.query(Gf2Vector.from_string("111")) == 0
    assert oracle.queries == 3
    with pytest.raises(DimensionError):
        oracle.query(Gf2Vector(2, 0))


# ---------------------------------------------------------------------------
# essential certificate sets
# ---------------------------------------------------------------------------

def test_essential_sets_exhaustive_small():
    for n in (1, 2, 3):
        for t in range(1, 1 << (1 << n)):
            f = BooleanFunction(n, t)
            ess = essential_certificate_set(f)
            verify_essential_set(f, ess)
            assert ess.codim == c1_xor(f)
            assert 1 <= ess.size <= t.bit_count()


def test_essential_sets_random_n4():
    rnd = random.Random(5)
    for _ in range(25):
        f = BooleanFunction(4, rnd.getrandbits(16) | 1)
        ess = essential_certificate_set(f)
        verify_essential_set(f, ess)
        d = ess.codim
        assert ess.size <= (1 << d) * (3 * 4) ** d


def test_essential_set_or2():
    f = parse_function_spec("zoo:or:2")
    ess = essential_certificate_set(f)
    assert ess.codim == 1 and ess.size == 2
    x1_is_1 = solve(Gf2Matrix.from_bits([0b01], 2), Gf2Vector(1, 1))
    assert x1_is_1 in ess.certificates
    # the canonical scan picks the sum constraint for the anchor 01
    sum_is_1 = solve(Gf2Matrix.from_bits([0b11], 2), Gf2Vector(1, 1))
    assert set(ess.certificates) == {x1_is_1, sum_is_1}


def test_essential_set_and2():
    f = parse_function_spec("zoo:and:2")
    ess = essential_certificate_set(f)
    assert ess.codim == 2 and ess.size == 1
    assert ess.certificates[0] == Coset.point(Gf2Vector(2, 0b11))


def test_essential_set_determinism():
    f = BooleanFunction(4, 0xBEEF)
    assert essential_certificate_set(f) == essential_certificate_set(f)


def test_verify_rejects_bad_sets():
    f = parse_function_spec("zoo:or:2")
    ess = essential_certificate_set(f)
    with pytest.raises(DomainError):  # codim mismatch
        verify_essential_set(f, EssentialSet(2, ess.certificates))
    x1_is_0 = solve(Gf2Matrix.from_bits([0b01], 2), Gf2Vector(1, 0))
    with pytest.raises(DomainError):  # covers the 0-input 00
        verify_essential_set(f, EssentialSet(1, (x1_is_0,)))
    with pytest.raises(DomainError):  # dropping a member uncovers an input
        verify_essential_set(f, EssentialSet(1, ess.certificates[:1]))
    ess3 = essential_certificate_set(parse_function_spec("zoo:and:2"))
    dup = EssentialSet(ess3.codim, ess3.certificates + ess3.certificates)
    with pytest.raises(DomainError):  # duplicate member is redundant
        verify_essential_set(parse_function_spec("zoo:and:2"), dup)


def test_essential_set_zero_function():
    with pytest.raises(DomainError):
        essential_certificate_set(BooleanFunction(3, 0))
    with pytest.raises(DomainError):
        verify_essential_set(BooleanFunction(3, 0), EssentialSet(0, ()))


def test_essential_set_budget():
    with pytest.raises(BudgetExceededError):
        essential_certificate_set(BooleanFunction(9, 1))
