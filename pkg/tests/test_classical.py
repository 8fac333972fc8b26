import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paritydt.boolfn import BooleanFunction, parse_function_spec
from paritydt.classical import (
    DecisionNode,
    bs,
    block_sensitivity,
    c,
    c0,
    c1,
    certificate_complexity,
    decision_depth,
    sampled_symmetrized,
    symmetrized,
    tree_depth,
    tree_eval,
    tree_jsonable,
)
from paritydt.errors import BudgetExceededError, DomainError
from paritydt.gf2 import Gf2Vector, enumerate_gl


# ---------------------------------------------------------------------------
# reference implementations, deliberately naive
# ---------------------------------------------------------------------------

def oracle_depth(f):
    n = f.arity

    def rec(fixed):
        pts = [
            x
            for x in range(1 << n)
            if all(((x >> (j - 1)) & 1) == b for j, b in fixed.items())
        ]
        if len({f.value_at(x) for x in pts}) == 1:
            return 0
        return min(
            1 + max(rec({**fixed, j: 0}), rec({**fixed, j: 1}))
            for j in range(1, n + 1)
            if j not in fixed
        )

    return rec({})


def oracle_cert(f, xb):
    n = f.arity
    want = f.value_at(xb)
    for k in range(n + 1):
        for combo in itertools.combinations(range(n), k):
            if all(
                f.value_at(y) == want
                for y in range(1 << n)
                if all(((y >> j) & 1) == ((xb >> j) & 1) for j in combo)
            ):
                return k
    raise AssertionError


def oracle_bs(f, xb):
    n = f.arity
    fx = f.value_at(xb)
    flips = [b for b in range(1, 1 << n) if f.value_at(xb ^ b) != fx]

    def rec(used):
        return max(
            (1 + rec(used | b) for b in flips if not (b & used)),
            default=0,
        )

    return rec(0)


def brute_rotate(f, m):
    t = 0
    for x in range(1 << f.arity):
        t |= f.value_at(m.mul_vec(Gf2Vector(f.arity, x)).bits) << x
    return BooleanFunction(f.arity, t)


tables4 = st.integers(min_value=0, max_value=(1 << 16) - 1)


# ---------------------------------------------------------------------------
# depth
# ---------------------------------------------------------------------------

def test_depth_matches_oracle_all_n3():
    for t in range(256):
        f = BooleanFunction(3, t)
        d, tree = decision_depth(f)
        assert d == oracle_depth(f)
        assert tree_depth(tree) == d
        for x in range(8):
            assert tree_eval(tree, x) == f.value_at(x)


@settings(max_examples=60)
@given(tables4)
def test_depth_matches_oracle_n4(t):
    f = BooleanFunction(4, t)
    d, tree = decision_depth(f)
    assert d == oracle_depth(f)
    assert tree_depth(tree) == d
    for x in range(16):
        assert tree_eval(tree, x) == f.value_at(x)


def test_depth_named_functions():
    assert decision_depth(parse_function_spec("zoo:or:3"))[0] == 3
    assert decision_depth(parse_function_spec("zoo:and:4"))[0] == 4
    assert decision_depth(parse_function_spec("zoo:parity:5"))[0] == 5
    assert decision_depth(parse_function_spec("zoo:maj:3"))[0] == 3
    assert decision_depth(parse_function_spec("zoo:dictator:4"))[0] == 1
    assert decision_depth(BooleanFunction(3, 0))[0] == 0


def test_depth_tree_shape_is_deterministic():
    f = parse_function_spec("zoo:or:2")
    _, t1 = decision_depth(f)
    _, t2 = decision_depth(f)
    assert t1 == t2
    assert isinstance(t1, DecisionNode) and t1.var == 1  # ties break low
    assert tree_jsonable(t1) == {
        "var": 1,
        "0": {"var": 2, "0": {"leaf": 0}, "1": {"leaf": 1}},
        "1": {"leaf": 1},
    }


def test_depth_budget():
    with pytest.raises(BudgetExceededError):
        decision_depth(BooleanFunction(11, 0))


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

def test_certificate_matches_oracle_all_n3():
    for t in range(256):
        f = BooleanFunction(3, t)
        prof = []
        for x in range(8):
            k, cert = certificate_complexity(f, Gf2Vector(3, x))
            assert k == oracle_cert(f, x)
            assert cert.size == k
            # the witness pins x's own values and forces f
            want = f.value_at(x)
            for j, v in zip(cert.indices, cert.values):
                assert ((x >> (j - 1)) & 1) == v
            fixed = [j - 1 for j in cert.indices]
            for y in range(8):
                if all(((y >> j) & 1) == ((x >> j) & 1) for j in fixed):
                    assert f.value_at(y) == want
            prof.append(k)
        # aggregate forms agree with the pointwise scan
        assert c(f) == max(prof)
        zeros = [prof[x] for x in range(8) if f.value_at(x) == 0]
        ones = [prof[x] for x in range(8) if f.value_at(x) == 1]
        assert c0(f) == (max(zeros) if zeros else None)
        assert c1(f) == (max(ones) if ones else None)


@settings(max_examples=60)
@given(tables4)
def test_certificate_aggregates_n4(t):
    f = BooleanFunction(4, t)
    prof = [certificate_complexity(f, Gf2Vector(4, x))[0] for x in range(16)]
    assert c(f) == max(prof)


def test_certificate_named_functions():
    or3 = parse_function_spec("zoo:or:3")
    assert (c0(or3), c1(or3), c(or3)) == (3, 1, 3)
    and3 = parse_function_spec("zoo:and:3")
    assert (c0(and3), c1(and3), c(and3)) == (1, 3, 3)
    maj3 = parse_function_spec("zoo:maj:3")
    assert (c0(maj3), c1(maj3), c(maj3)) == (2, 2, 2)
    zero = BooleanFunction(3, 0)
    assert (c0(zero), c1(zero), c(zero)) == (0, None, 0)


def test_certificate_budget():
    with pytest.raises(BudgetExceededError):
        certificate_complexity(BooleanFunction(13, 0), Gf2Vector(13, 0))
    with pytest.raises(BudgetExceededError):
        c(BooleanFunction(13, 0))


# ---------------------------------------------------------------------------
# block sensitivity
# ---------------------------------------------------------------------------

def test_bs_matches_oracle_all_n3():
    for t in range(256):
        f = BooleanFunction(3, t)
        best = 0
        for x in range(8):
            v, fam = block_sensitivity(f, Gf2Vector(3, x))
            assert v == oracle_bs(f, x)
            assert len(fam.blocks) == v
            assert fam.anchor.bits == x
            seen = 0
            for blk in fam.blocks:
                m = 0
                for j in blk:
                    m |= 1 << (j - 1)
                assert not (m & seen)  # disjoint
                seen |= m
                assert f.value_at(x ^ m) != f.value_at(x)
            best = max(best, v)
        assert bs(f) == best


@settings(max_examples=60)
@given(tables4)
def test_bs_n4(t):
    f = BooleanFunction(4, t)
    assert bs(f) == max(oracle_bs(f, x) for x in range(16))


def test_bs_named_functions():
    assert bs(parse_function_spec("zoo:or:4")) == 4
    assert bs(parse_function_spec("zoo:and:4")) == 4
    assert bs(parse_function_spec("zoo:parity:4")) == 4
    assert bs(parse_function_spec("zoo:maj:3")) == 2
    assert bs(BooleanFunction(4, 0)) == 0


def test_bs_budget():
    with pytest.raises(BudgetExceededError):
        bs(BooleanFunction(9, 0))
    with pytest.raises(BudgetExceededError):
        block_sensitivity(BooleanFunction(9, 0), Gf2Vector(9, 0))


def test_bs_at_most_c_all_n3():
    for t in range(256):
        f = BooleanFunction(3, t)
        b, cv = bs(f), c(f)
        assert b <= cv <= b * b or (b == cv == 0)


# ---------------------------------------------------------------------------
# minima over invertible basis changes
# ---------------------------------------------------------------------------

def test_symmetrized_matches_brute_n2():
    gl2 = list(enumerate_gl(2))
    oracles = {"d": oracle_depth, "c": lambda g: max(oracle_cert(g, x) for x in range(4)),
               "bs": lambda g: max(oracle_bs(g, x) for x in range(4))}
    for t in range(16):
        f = BooleanFunction(2, t)
        for name, orc in oracles.items():
            want = min(orc(brute_rotate(f, b)) for b in gl2)
            got, wit = symmetrized(name, f)
            assert got == want
            assert orc(brute_rotate(f, wit)) == got  # witness achieves it


def test_symmetrized_named_functions():
    # parity becomes a dictator under a basis change; AND stays hard
    par4 = parse_function_spec("zoo:parity:4")
    assert symmetrized("d", par4)[0] == 1
    assert symmetrized("c", par4)[0] == 1
    assert symmetrized("bs", par4)[0] == 1
    and3 = parse_function_spec("zoo:and:3")
    assert symmetrized("d", and3)[0] == 3
    assert symmetrized("c", and3)[0] == 3
    assert symmetrized("bs", and3)[0] == 3


def test_symmetrized_validation():
    with pytest.raises(DomainError):
        symmetrized("depth", BooleanFunction(2, 6))
    with pytest.raises(BudgetExceededError):
        symmetrized("d", BooleanFunction(5, 0))


def test_sampled_symmetrized_bounds():
    # includes the identity, so never worse than the plain measure,
    # and never better than the exhaustive minimum
    for t in range(0, 256, 7):
        f = BooleanFunction(3, t)
        exact = symmetrized("bs", f)[0]
        got, wit = sampled_symmetrized("bs", f, samples=10, seed=3)
        assert exact <= got <= bs(f)
        assert bs(brute_rotate(f, wit)) == got
    again = sampled_symmetrized("bs", BooleanFunction(3, 150), samples=10, seed=3)
    assert sampled_symmetrized("bs", BooleanFunction(3, 150), samples=10, seed=3) == again
