"""Classical complexity measures of total Boolean functions: decision
tree depth, certificate complexity, block sensitivity, and their
minima over invertible changes of basis.

All searches are exhaustive within the documented arity budgets and
return deterministic witnesses (first hit in a fixed scan order).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .boolfn import BooleanFunction, _low_mask, _table_partner, _table_xor_translate, rotate
from .errors import BudgetExceededError, DimensionError, DomainError
from .gf2 import Gf2Matrix, Gf2Vector, enumerate_gl

__all__ = [
    "DecisionLeaf",
    "DecisionNode",
    "DecisionTree",
    "ClassicalCertificate",
    "BlockFamily",
    "decision_depth",
    "certificate_complexity",
    "c0",
    "c1",
    "c",
    "block_sensitivity",
    "bs",
    "symmetrized",
    "sampled_symmetrized",
]

DEPTH_MAX_ARITY = 10
CERT_MAX_ARITY = 12
BS_MAX_ARITY = 8
SYMMETRIZED_MAX_ARITY = 4


@dataclass(frozen=True)
class DecisionLeaf:
    value: int


@dataclass(frozen=True)
class DecisionNode:
    """Internal node querying variable x_var (1-based); low/high are the
    subtrees for answers 0/1."""

    var: int
    low: "DecisionTree"
    high: "DecisionTree"


DecisionTree = DecisionLeaf | DecisionNode


def tree_depth(t: DecisionTree) -> int:
    if isinstance(t, DecisionLeaf):
        return 0
    return 1 + max(tree_depth(t.low), tree_depth(t.high))


def tree_eval(t: DecisionTree, idx: int) -> int:
    while isinstance(t, DecisionNode):
        t = t.high if (idx >> (t.var - 1)) & 1 else t.low
    return t.value


def tree_jsonable(t: DecisionTree) -> dict:
    if isinstance(t, DecisionLeaf):
        return {"leaf": t.value}
    return {"var": t.var, "0": tree_jsonable(t.low), "1": tree_jsonable(t.high)}


@dataclass(frozen=True)
class ClassicalCertificate:
    """A partial assignment: variables ``indices`` (1-based, increasing)
    pinned to ``values``; every completion gets the same function value."""

    indices: tuple[int, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.indices) != len(self.values):
            raise DimensionError("indices/values length mismatch")
        if list(self.indices) != sorted(set(self.indices)):
            raise DimensionError("indices must be strictly increasing")

    @property
    def size(self) -> int:
        return len(self.indices)

    def to_jsonable(self) -> dict:
        return {"indices": list(self.indices), "values": list(self.values)}


@dataclass(frozen=True)
class BlockFamily:
    """Disjoint sensitive blocks at an anchor input, 1-based indices."""

    anchor: Gf2Vector
    blocks: tuple[tuple[int, ...], ...]

    def to_jsonable(self) -> dict:
        return {"anchor": self.anchor.to_string(), "blocks": [list(b) for b in self.blocks]}


# ---------------------------------------------------------------------------
# decision tree depth
# ---------------------------------------------------------------------------

def decision_depth(f: BooleanFunction) -> tuple[int, DecisionTree]:
    """Exact deterministic decision tree depth with an optimal tree.

    Memoized over restriction patterns (which variables are fixed, and
    to what); ties between variables break toward the smallest index.
    """
    n = f.arity
    if n > DEPTH_MAX_ARITY:
        raise BudgetExceededError(f"decision_depth limited to arity <= {DEPTH_MAX_ARITY}, got {n}")
    t = f.table
    full = (1 << n) - 1
    memo: dict[tuple[int, int], tuple[int, int]] = {}  # (mask, vals) -> (depth, var or -1)

    def subcube_constant(mask: int, vals: int) -> bool:
        free = full & ~mask
        want = (t >> vals) & 1
        sub = free
        while sub:
            if ((t >> (vals | sub)) & 1) != want:
                return False
            sub = (sub - 1) & free
        return True

    def best(mask: int, vals: int) -> int:
        got = memo.get((mask, vals))
        if got is not None:
            return got[0]
        if subcube_constant(mask, vals):
            memo[(mask, vals)] = (0, -1)
            return 0
        bd, bi = None, -1
        for i in range(n):
            b = 1 << i
            if mask & b:
                continue
            d = 1 + max(best(mask | b, vals), best(mask | b, vals | b))
            if bd is None or d < bd:
                bd, bi = d, i
        memo[(mask, vals)] = (bd, bi)
        return bd

    def build(mask: int, vals: int) -> DecisionTree:
        d, i = memo[(mask, vals)]
        if i < 0:
            return DecisionLeaf((t >> vals) & 1)
        b = 1 << i
        return DecisionNode(i + 1, build(mask | b, vals), build(mask | b, vals | b))

    depth = best(0, 0)
    return depth, build(0, 0)


# ---------------------------------------------------------------------------
# certificate complexity
# ---------------------------------------------------------------------------

def certificate_complexity(f: BooleanFunction, x: Gf2Vector) -> tuple[int, ClassicalCertificate]:
    """Smallest set of variables whose values at x force f's value.

    Scans subsets by size then lexicographically; the first success is
    the witness.
    """
    n = f.arity
    if n > CERT_MAX_ARITY:
        raise BudgetExceededError(f"certificate_complexity limited to arity <= {CERT_MAX_ARITY}, got {n}")
    if x.width != n:
        raise DimensionError("input width mismatch")
    t = f.table
    xb = x.bits
    want = (t >> xb) & 1
    full = (1 << n) - 1
    for k in range(n + 1):
        for combo in itertools.combinations(range(1, n + 1), k):
            smask = 0
            for j in combo:
                smask |= 1 << (j - 1)
            free = full & ~smask
            ok = True
            sub = free
            while True:
                if ((t >> (xb ^ sub)) & 1) != want:
                    ok = False
                    break
                if sub == 0:
                    break
                sub = (sub - 1) & free
            if ok:
                return k, ClassicalCertificate(combo, tuple((xb >> (j - 1)) & 1 for j in combo))
    raise AssertionError("unreachable: the full assignment always certifies")


@lru_cache(maxsize=4096)
def _certificate_profile(arity: int, table: int) -> bytes:
    """Per-input certificate size, all inputs at once.

    For every set M of free coordinates, OR- and AND-smear the table
    along M; inputs where both smears agree sit in a constant subcube
    with |M| free coordinates.
    """
    n = arity
    size = 1 << n
    full = (1 << size) - 1
    or_t = [0] * (1 << n)
    and_t = [0] * (1 << n)
    or_t[0] = and_t[0] = table
    eq_by_pop = [0] * (n + 1)
    eq_by_pop[0] = full
    for mask in range(1, 1 << n):
        b = (mask & -mask).bit_length() - 1
        parent = mask & (mask - 1)
        po = _table_partner(or_t[parent], n, b)
        pa = _table_partner(and_t[parent], n, b)
        or_t[mask] = or_t[parent] | po
        and_t[mask] = and_t[parent] & pa
        eq_by_pop[mask.bit_count()] |= full & ~(or_t[mask] ^ and_t[mask])
    out = bytearray(size)
    remaining = full
    for s in range(n, -1, -1):
        new = eq_by_pop[s] & remaining
        val = n - s
        while new:
            low = new & -new
            out[low.bit_length() - 1] = val
            new ^= low
        remaining &= ~eq_by_pop[s]
    return bytes(out)


def _aggregate(profile: bytes, table: int, value: int) -> int | None:
    best = None
    for idx, sz in enumerate(profile):
        if ((table >> idx) & 1) == value and (best is None or sz > best):
            best = sz
    return best


def c0(f: BooleanFunction) -> int | None:
    """Max certificate size over 0-inputs; None when f has no 0-input."""
    if f.arity > CERT_MAX_ARITY:
        raise BudgetExceededError(f"certificate aggregates limited to arity <= {CERT_MAX_ARITY}")
    return _aggregate(_certificate_profile(f.arity, f.table), f.table, 0)


def c1(f: BooleanFunction) -> int | None:
    if f.arity > CERT_MAX_ARITY:
        raise BudgetExceededError(f"certificate aggregates limited to arity <= {CERT_MAX_ARITY}")
    return _aggregate(_certificate_profile(f.arity, f.table), f.table, 1)


def c(f: BooleanFunction) -> int:
    """Certificate complexity: max over all inputs (0 for constants)."""
    if f.arity > CERT_MAX_ARITY:
        raise BudgetExceededError(f"certificate aggregates limited to arity <= {CERT_MAX_ARITY}")
    return max(_certificate_profile(f.arity, f.table))


# ---------------------------------------------------------------------------
# block sensitivity
# ---------------------------------------------------------------------------

_packing_cache: dict[tuple[int, int], int] = {}


def _max_packing(n: int, sens: int) -> int:
    """Maximum number of disjoint coordinate blocks marked in ``sens``
    (a bitmap over block masks)."""
    got = _packing_cache.get((n, sens))
    if got is not None:
        return got
    dp = [0] * (1 << n)
    for mask in range(1, 1 << n):
        ib = mask & -mask
        best = dp[mask ^ ib]
        rest = mask ^ ib
        sub = rest
        while True:
            blk = sub | ib
            if (sens >> blk) & 1:
                cand = 1 + dp[mask ^ blk]
                if cand > best:
                    best = cand
            if sub == 0:
                break
            sub = (sub - 1) & rest
        dp[mask] = best
    out = dp[(1 << n) - 1]
    _packing_cache[(n, sens)] = out
    return out


def _sens_bitmap(arity: int, table: int, xb: int) -> int:
    """Bitmap over nonempty block masks p with f(x ^ p) != f(x)."""
    t = _table_xor_translate(table, arity, xb)
    full = (1 << (1 << arity)) - 1
    return (full & ~t) if (t & 1) else t


def _packing_blocks(n: int, sens: int) -> list[int]:
    """One maximum packing, deterministically (skip-lowest first, then
    blocks in submask-descending order, matching the DP scan)."""
    blocks = []
    mask = (1 << n) - 1
    while mask:
        target = _max_packing(n, sens & _blocks_within(mask, n))
        ib = mask & -mask
        if _max_packing(n, sens & _blocks_within(mask ^ ib, n)) == target:
            mask ^= ib
            continue
        rest = mask ^ ib
        sub = rest
        while True:
            blk = sub | ib
            if (sens >> blk) & 1 and 1 + _max_packing(n, sens & _blocks_within(mask ^ blk, n)) == target:
                blocks.append(blk)
                mask ^= blk
                break
            if sub == 0:
                break
            sub = (sub - 1) & rest
    return blocks


@lru_cache(maxsize=None)
def _blocks_within(mask: int, n: int) -> int:
    """Bitmap of all block masks that are submasks of ``mask``."""
    out = 0
    sub = mask
    while True:
        out |= 1 << sub
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return out


def block_sensitivity(f: BooleanFunction, x: Gf2Vector) -> tuple[int, BlockFamily]:
    """Largest family of disjoint blocks each of which flips f at x."""
    n = f.arity
    if n > BS_MAX_ARITY:
        raise BudgetExceededError(f"block_sensitivity limited to arity <= {BS_MAX_ARITY}, got {n}")
    if x.width != n:
        raise DimensionError("input width mismatch")
    sens = _sens_bitmap(n, f.table, x.bits)
    val = _max_packing(n, sens)
    blocks = _packing_blocks(n, sens)
    fam = BlockFamily(
        anchor=x,
        blocks=tuple(tuple(j + 1 for j in range(n) if (b >> j) & 1) for b in blocks),
    )
    return val, fam


def bs(f: BooleanFunction) -> int:
    """Block sensitivity: max over inputs."""
    n = f.arity
    if n > BS_MAX_ARITY:
        raise BudgetExceededError(f"bs limited to arity <= {BS_MAX_ARITY}, got {n}")
    best = 0
    for xb in range(1 << n):
        v = _max_packing(n, _sens_bitmap(n, f.table, xb))
        if v > best:
            best = v
            if best == n:
                break
    return best


# ---------------------------------------------------------------------------
# minima over invertible changes of basis
# ---------------------------------------------------------------------------

_MEASURES = {"d", "c", "bs"}


def _measure_value(measure: str, g: BooleanFunction) -> int:
    if measure == "d":
        return decision_depth(g)[0]
    if measure == "c":
        return c(g)
    if measure == "bs":
        return bs(g)
    raise DomainError(f"unknown measure {measure!r}; expected one of {sorted(_MEASURES)}")


@lru_cache(maxsize=8)
def _gl_list(n: int) -> tuple[Gf2Matrix, ...]:
    return tuple(enumerate_gl(n))


def symmetrized(measure: str, f: BooleanFunction) -> tuple[int, Gf2Matrix]:
    """min over invertible B of measure(x -> f(Bx)), with a minimizing B.

    Exhausts the full group; exact for arity <= 4.
    """
    n = f.arity
    if measure not in _MEASURES:
        raise DomainError(f"unknown measure {measure!r}; expected one of {sorted(_MEASURES)}")
    if n > SYMMETRIZED_MAX_ARITY:
        raise BudgetExceededError(
            f"symmetrized limited to arity <= {SYMMETRIZED_MAX_ARITY}, got {n}; use sampled_symmetrized"
        )
    best = None
    witness = None
    for b in _gl_list(n):
        v = _measure_value(measure, rotate(f, b))
        if best is None or v < best:
            best, witness = v, b
            if best == 0:
                break
    return best, witness


def sampled_symmetrized(measure: str, f: BooleanFunction, samples: int, seed: int) -> tuple[int, Gf2Matrix]:
    """Seeded sampled variant; the returned value is only an upper bound."""
    from .gf2 import sample_gl

    n = f.arity
    best = None
    witness = None
    for b in [Gf2Matrix.identity(n)] + sample_gl(n, samples, seed):
        v = _measure_value(measure, rotate(f, b))
        if best is None or v < best:
            best, witness = v, b
    return best, witness
