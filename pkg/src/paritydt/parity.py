"""Parity analogues of the classical measures: certificates that are
cosets, decision trees that query parities, and block sensitivity
minimized over changes of basis.

Functions restricted to a coset are measured through their local
re-indexing (see boolfn.RestrictedFunction); every search is
deterministic, scanning codimension (or depth) outward and canonical
enumeration order within, so witnesses are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .boolfn import (
    BooleanFunction,
    RestrictedFunction,
    as_restricted,
    local_point,
    restrict,
)
from .classical import _max_packing
from .errors import BudgetExceededError, DimensionError, DomainError
from .gf2 import (
    Coset,
    Gf2Matrix,
    Gf2Vector,
    _kernel_bits,
    _rref_bits,
    _solve_bits,
    _span_order,
    enumerate_subspaces,
    parity,
    sample_gl,
)

__all__ = [
    "ParityCertificate",
    "ParityLeaf",
    "ParityQuery",
    "ParityDecisionTree",
    "MeasureValue",
    "MeasureReport",
    "parity_certificate",
    "c0_xor",
    "c1_xor",
    "c_xor",
    "parity_depth",
    "pdt_depth",
    "pdt_eval",
    "pdt_leaf_cosets",
    "pdt_jsonable",
    "weak_parity_bs",
    "sampled_weak_parity_bs",
    "wbs_xor",
    "parity_bs",
    "sampled_parity_bs",
]

CERT_MAX_ARITY = 10
DEPTH_MAX_ARITY = 8
WBS_EXACT_MAX_DIM = 4
WBS_SAMPLED_MAX_DIM = 5
PBS_EXACT_MAX_ARITY = 4
PBS_SAMPLED_MAX_ARITY = 8


@dataclass(frozen=True)
class ParityCertificate:
    """A coset on which the function is constant; size = codimension."""

    coset: Coset
    value: int

    @property
    def size(self) -> int:
        return self.coset.codim

    def to_jsonable(self) -> dict:
        return {"coset": self.coset.to_jsonable(), "value": self.value}


@dataclass(frozen=True)
class ParityLeaf:
    value: int


@dataclass(frozen=True)
class ParityQuery:
    """Internal node querying <x, query>; child0/child1 follow the answer."""

    query: Gf2Vector
    child0: "ParityDecisionTree"
    child1: "ParityDecisionTree"


ParityDecisionTree = ParityLeaf | ParityQuery


def pdt_depth(t: ParityDecisionTree) -> int:
    if isinstance(t, ParityLeaf):
        return 0
    return 1 + max(pdt_depth(t.child0), pdt_depth(t.child1))


def pdt_eval(t: ParityDecisionTree, xb: int) -> int:
    while isinstance(t, ParityQuery):
        t = t.child1 if parity(t.query.bits & xb) else t.child0
    return t.value


def pdt_leaf_cosets(t: ParityDecisionTree, domain: Coset) -> list[tuple[Coset, int]]:
    """(leaf coset, leaf value) pairs; raises if a path repeats a query
    class or an intersection turns empty."""
    out: list[tuple[Coset, int]] = []

    def walk(node: ParityDecisionTree, cur: Coset):
        if isinstance(node, ParityLeaf):
            out.append((cur, node.value))
            return
        for b, child in ((0, node.child0), (1, node.child1)):
            nxt = cur.with_constraint(node.query, b)
            if nxt is None:
                raise DomainError("tree branch is inconsistent with its path")
            if nxt.codim != cur.codim + 1:
                raise DomainError("tree query is dependent on its path")
            walk(child, nxt)

    walk(t, domain)
    return out


def pdt_jsonable(t: ParityDecisionTree) -> dict:
    if isinstance(t, ParityLeaf):
        return {"leaf": t.value}
    return {"query": t.query.to_string(), "0": pdt_jsonable(t.child0), "1": pdt_jsonable(t.child1)}


@dataclass
class MeasureValue:
    """One measured quantity: value, exactness, optional witness/note."""

    value: int | None
    exact: bool = True
    witness: object = None
    note: str | None = None

    def to_jsonable(self) -> dict:
        out: dict = {"value": self.value, "exact": self.exact}
        if self.witness is not None:
            w = self.witness
            out["witness"] = w.to_jsonable() if hasattr(w, "to_jsonable") else w
        if self.note is not None:
            out["note"] = self.note
        return out


@dataclass
class MeasureReport:
    """Measures of one function, keyed by measure name."""

    function: str
    measures: dict[str, MeasureValue] = field(default_factory=dict)

    def to_jsonable(self) -> dict:
        return {
            "function": self.function,
            "measures": {k: v.to_jsonable() for k, v in sorted(self.measures.items())},
        }


# ---------------------------------------------------------------------------
# localization
# ---------------------------------------------------------------------------

def _localize(f: BooleanFunction | RestrictedFunction) -> RestrictedFunction:
    if isinstance(f, BooleanFunction):
        return as_restricted(f)
    if isinstance(f, RestrictedFunction):
        return f
    raise DimensionError(f"expected a BooleanFunction or RestrictedFunction, got {type(f).__name__}")


# ---------------------------------------------------------------------------
# parity certificates
# ---------------------------------------------------------------------------

@lru_cache(maxsize=8)
def _frames(m: int) -> tuple[tuple[tuple[tuple[int, ...], tuple[int, ...]], ...], ...]:
    """Per codimension k: all (dual basis rows, direction basis rows).

    The dual subspaces follow enumerate_subspaces order, so certificate
    searches that scan these frames in order are canonical.
    """
    out = []
    for k in range(m + 1):
        level = []
        for sub in enumerate_subspaces(m, k):
            wrows = sub.basis.row_bits
            vrows = tuple(_kernel_bits(list(wrows), m))
            level.append((wrows, vrows))
        out.append(tuple(level))
    return tuple(out)


_profile_cache: dict[tuple[int, int], bytes] = {}


def _cxor_profile(m: int, table: int) -> bytes:
    """Smallest certifying codimension for every local input at once.

    For each direction space V (scanned by decreasing dimension), mark
    the inputs whose V-coset is constant; the first k that covers an
    input is its certificate size.
    """
    cached = _profile_cache.get((m, table)) if m <= 4 else None
    if cached is not None:
        return cached
    size = 1 << m
    full = (1 << size) - 1
    out = bytearray(size)
    remaining = full
    if table == 0 or table == full:
        res = bytes(size)
        if m <= 4:
            _profile_cache[(m, table)] = res
        return res
    frames = _frames(m) if m <= 5 else None
    for k in range(m + 1):
        level = frames[k] if frames is not None else (
            (s.basis.row_bits, tuple(_kernel_bits(list(s.basis.row_bits), m))) for s in enumerate_subspaces(m, k)
        )
        for _wrows, vrows in level:
            or_t = and_t = table
            for v in vrows:
                or_t |= _translate(or_t, m, v)
                and_t &= _translate(and_t, m, v)
            eq = full & ~(or_t ^ and_t)
            new = eq & remaining
            while new:
                low = new & -new
                out[low.bit_length() - 1] = k
                new ^= low
            remaining &= ~eq
            if not remaining:
                break
        if not remaining:
            break
    res = bytes(out)
    if m <= 4:
        _profile_cache[(m, table)] = res
    return res


def _translate(t: int, m: int, v: int) -> int:
    from .boolfn import _table_xor_translate

    return _table_xor_translate(t, m, v)


def parity_certificate(
    f: BooleanFunction | RestrictedFunction, x: Gf2Vector
) -> tuple[int, ParityCertificate]:
    """Smallest-codimension coset through x on which f is constant.

    Scans codimension 0, 1, ... over canonical dual subspaces; the
    witness is the first success, expressed as an ambient coset whose
    codimension equals the certificate size.
    """
    rf = _localize(f)
    m = rf.local.arity
    if rf.ambient.ncols > CERT_MAX_ARITY:
        raise BudgetExceededError(f"parity_certificate limited to ambient arity <= {CERT_MAX_ARITY}")
    y = local_point(rf, x)
    table = rf.local.table
    want = (table >> y) & 1
    for k in range(m + 1):
        level = _frames(m)[k] if m <= 5 else (
            (s.basis.row_bits, tuple(_kernel_bits(list(s.basis.row_bits), m))) for s in enumerate_subspaces(m, k)
        )
        for wrows, vrows in level:
            if all(((table >> (y ^ v)) & 1) == want for v in _span_order(list(vrows))):
                rhs = [parity(w & y) for w in wrows]
                coset = _lift_certificate(rf, wrows, rhs)
                return k, ParityCertificate(coset, want)
    raise AssertionError("unreachable: the point coset always certifies")


def _lift_certificate(rf: RestrictedFunction, wrows, rhs_bits) -> Coset:
    """Express local constraints <y, w> = r as an ambient canonical coset."""
    n = rf.ambient.ncols
    erows = list(rf.basis.row_bits)
    if rf.offset.bits == 0 and erows == [1 << i for i in range(n)]:
        got = _solve_bits(list(wrows), list(rhs_bits), n)
        assert got is not None
        return got
    amb_rows = []
    amb_rhs = []
    for w, r in zip(wrows, rhs_bits):
        sol = _solve_bits(erows, [(w >> i) & 1 for i in range(len(erows))], n)
        assert sol is not None, "frame rows are independent, so the lift always solves"
        cb = sol.min_member_bits()
        amb_rows.append(cb)
        amb_rhs.append(r ^ parity(rf.offset.bits & cb))
    got = _solve_bits(amb_rows, amb_rhs, n)
    assert got is not None and got.codim == len(amb_rows), "lifted constraints stay independent"
    return got


def _aggregate_xor(profile: bytes, table: int, value: int) -> int | None:
    best = None
    for idx, sz in enumerate(profile):
        if ((table >> idx) & 1) == value and (best is None or sz > best):
            best = sz
    return best


def _check_cert_budget(rf: RestrictedFunction):
    if rf.ambient.ncols > CERT_MAX_ARITY:
        raise BudgetExceededError(f"parity certificate aggregates limited to ambient arity <= {CERT_MAX_ARITY}")


def c0_xor(f: BooleanFunction | RestrictedFunction) -> int | None:
    """Max parity certificate size over 0-inputs; None if f has none."""
    rf = _localize(f)
    _check_cert_budget(rf)
    return _aggregate_xor(_cxor_profile(rf.local.arity, rf.local.table), rf.local.table, 0)


def c1_xor(f: BooleanFunction | RestrictedFunction) -> int | None:
    rf = _localize(f)
    _check_cert_budget(rf)
    return _aggregate_xor(_cxor_profile(rf.local.arity, rf.local.table), rf.local.table, 1)


def c_xor(f: BooleanFunction | RestrictedFunction) -> int:
    """Parity certificate complexity (0 for constants)."""
    rf = _localize(f)
    _check_cert_budget(rf)
    prof = _cxor_profile(rf.local.arity, rf.local.table)
    return max(prof) if prof else 0


# ---------------------------------------------------------------------------
# parity decision tree depth
# ---------------------------------------------------------------------------

_split_cache: dict[tuple[int, int], tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]] = {}
_dxor_memo: dict[tuple[int, int], tuple[int, int | None]] = {}


def _split_frames(m: int, w: int) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """(gather indices for answer 0, for answer 1, direction pivots) of
    the two restrictions along query w, in canonical frames."""
    got = _split_cache.get((m, w))
    if got is not None:
        return got
    vrows = _kernel_bits([w], m)
    pts = _span_order(vrows)
    off1 = 1 << ((w & -w).bit_length() - 1)
    idx0 = tuple(pts)
    idx1 = tuple(off1 ^ p for p in pts)
    pivots = tuple((r & -r).bit_length() - 1 for r in vrows)
    res = (idx0, idx1, pivots)
    _split_cache[(m, w)] = res
    return res


def _gather(table: int, idxs: tuple[int, ...]) -> int:
    acc = 0
    for i, p in enumerate(idxs):
        acc |= ((table >> p) & 1) << i
    return acc


@lru_cache(maxsize=None)
def _parity_table(m: int, w: int) -> int:
    t = 0
    for x in range(1 << m):
        t |= ((x & w).bit_count() & 1) << x
    return t


def _affine_query(m: int, table: int) -> int | None:
    """The w with f = <x,w> (+1), or None; assumes f nonconstant."""
    f0 = table & 1
    w = 0
    for i in range(m):
        if ((table >> (1 << i)) & 1) != f0:
            w |= 1 << i
    if w == 0:
        return None
    pt = _parity_table(m, w)
    full = (1 << (1 << m)) - 1
    if table == (pt if f0 == 0 else full & ~pt):
        return w
    return None


def _dxor(m: int, table: int) -> tuple[int, int | None]:
    full = (1 << (1 << m)) - 1
    if table == 0 or table == full:
        return 0, None
    got = _dxor_memo.get((m, table))
    if got is not None:
        return got
    w_aff = _affine_query(m, table)
    if w_aff is not None:
        _dxor_memo[(m, table)] = (1, w_aff)
        return 1, w_aff
    # nonconstant and non-affine forces depth >= 2; below dimension 6 the
    # certificate bound is cheap and usually tighter
    lb = max(_cxor_profile(m, table)) if m <= 5 else 2
    best = None
    best_w = None
    for w in range(1, 1 << m):
        idx0, idx1, _ = _split_frames(m, w)
        d0 = _dxor(m - 1, _gather(table, idx0))[0]
        d1 = _dxor(m - 1, _gather(table, idx1))[0]
        d = 1 + (d0 if d0 >= d1 else d1)
        if best is None or d < best:
            best, best_w = d, w
            if best == lb:
                break
    _dxor_memo[(m, table)] = (best, best_w)
    return best, best_w


def _rebuild_tree(m: int, table: int) -> ParityDecisionTree:
    d, w = _dxor(m, table)
    if d == 0:
        return ParityLeaf(table & 1)
    idx0, idx1, pivots = _split_frames(m, w)
    sub0 = _rebuild_tree(m - 1, _gather(table, idx0))
    sub1 = _rebuild_tree(m - 1, _gather(table, idx1))
    off1 = 1 << ((w & -w).bit_length() - 1)
    return ParityQuery(
        Gf2Vector(m, w),
        _lift_tree(sub0, pivots, m, 0),
        _lift_tree(sub1, pivots, m, off1),
    )


def _lift_tree(t: ParityDecisionTree, pivots: tuple[int, ...], m: int, off: int) -> ParityDecisionTree:
    """Re-express child-local queries in the parent's coordinates: the
    canonical direction basis is in RREF, so local coordinate i maps to
    the pivot coordinate of basis row i.  ``off`` is the branch's coset
    offset; a lifted query with odd overlap against it answers opposite
    to its local form, so the children swap."""
    if isinstance(t, ParityLeaf):
        return t
    q = t.query.bits
    lifted = 0
    for i, p in enumerate(pivots):
        if (q >> i) & 1:
            lifted |= 1 << p
    c0t = _lift_tree(t.child0, pivots, m, off)
    c1t = _lift_tree(t.child1, pivots, m, off)
    if parity(off & lifted):
        c0t, c1t = c1t, c0t
    return ParityQuery(Gf2Vector(m, lifted), c0t, c1t)


def parity_depth(f: BooleanFunction | RestrictedFunction) -> tuple[int, ParityDecisionTree]:
    """Exact parity decision tree depth with an optimal tree.

    Branch and bound over all 2^m - 1 query classes, memoized on the
    local truth table of the canonical restriction; ties break toward
    the smallest packed query.
    """
    rf = _localize(f)
    if rf.ambient.ncols > DEPTH_MAX_ARITY:
        raise BudgetExceededError(f"parity_depth limited to ambient arity <= {DEPTH_MAX_ARITY}")
    m = rf.local.arity
    d, _ = _dxor(m, rf.local.table)
    tree = _rebuild_tree(m, rf.local.table)
    if isinstance(f, RestrictedFunction):
        tree = _lift_tree_general(tree, rf)
    return d, tree


def _lift_tree_general(t: ParityDecisionTree, rf: RestrictedFunction) -> ParityDecisionTree:
    n = rf.ambient.ncols
    erows = list(rf.basis.row_bits)
    if rf.offset.bits == 0 and erows == [1 << i for i in range(n)]:
        return t

    def lift(node: ParityDecisionTree) -> ParityDecisionTree:
        if isinstance(node, ParityLeaf):
            return node
        w = node.query.bits
        sol = _solve_bits(erows, [(w >> i) & 1 for i in range(len(erows))], n)
        assert sol is not None
        cb = sol.min_member_bits()
        # the offset may flip the branch labelling
        flip = parity(rf.offset.bits & cb)
        c0t, c1t = lift(node.child0), lift(node.child1)
        if flip:
            c0t, c1t = c1t, c0t
        return ParityQuery(Gf2Vector(n, cb), c0t, c1t)

    return lift(t)


# ---------------------------------------------------------------------------
# weak parity block sensitivity
# ---------------------------------------------------------------------------

@lru_cache(maxsize=8)
def _sorted_bases(m: int) -> tuple[tuple[int, ...], ...]:
    """All unordered bases of {0,1}^m as increasing tuples."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], ech: list[int], start: int):
        if len(prefix) == m:
            out.append(tuple(prefix))
            return
        for v in range(start, 1 << m):
            red = v
            for r in ech:
                if red & (r & -r):
                    red ^= r
            if red:
                ins = sorted(ech + [red], key=lambda r: r & -r)
                rec(prefix + [v], ins, v + 1)

    rec([], [], 1)
    return tuple(out)


@lru_cache(maxsize=8)
def _basis_sums(m: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """(basis, signed-sum table over subsets) for every unordered basis."""
    out = []
    for basis in _sorted_bases(m):
        out.append((basis, tuple(_span_order(list(basis)))))
    return tuple(out)


def _wbs_point(m: int, table: int, y: int) -> tuple[int, tuple[int, ...]]:
    full = (1 << (1 << m)) - 1
    if table == 0 or table == full:
        return 0, tuple(1 << i for i in range(m))
    fy = (table >> y) & 1
    best = None
    best_basis = None
    for basis, sums in _basis_sums(m):
        bm = 0
        for s_idx in range(1, 1 << m):
            if ((table >> (y ^ sums[s_idx])) & 1) != fy:
                bm |= 1 << s_idx
        v = _max_packing(m, bm)
        if best is None or v < best:
            best, best_basis = v, basis
            if best == 1:
                break
    if best is None:  # m == 0: no bases, nothing to flip
        return 0, ()
    return best, best_basis


def _basis_matrix(m: int, basis: tuple[int, ...]) -> Gf2Matrix:
    """Matrix B whose columns are the basis vectors (so B maps the
    standard basis onto them)."""
    rows = []
    for i in range(m):
        acc = 0
        for j, col in enumerate(basis):
            acc |= ((col >> i) & 1) << j
        rows.append(acc)
    return Gf2Matrix.from_bits(rows, m)


def weak_parity_bs(f: BooleanFunction | RestrictedFunction, x: Gf2Vector) -> tuple[int, Gf2Matrix]:
    """min over bases B of the block sensitivity of f(B y) at B^-1 x.

    Exhausts all unordered bases; exact for effective dimension <= 4.
    """
    rf = _localize(f)
    m = rf.local.arity
    if m > WBS_EXACT_MAX_DIM:
        raise BudgetExceededError(
            f"weak_parity_bs exact search limited to dimension <= {WBS_EXACT_MAX_DIM}, got {m}; "
            "use sampled_weak_parity_bs"
        )
    y = local_point(rf, x)
    v, basis = _wbs_point(m, rf.local.table, y)
    return v, _basis_matrix(m, basis)


def sampled_weak_parity_bs(
    f: BooleanFunction | RestrictedFunction, x: Gf2Vector, samples: int, seed: int
) -> tuple[int, Gf2Matrix]:
    """Seeded sampled variant (upper bound only); dimension <= 5."""
    rf = _localize(f)
    m = rf.local.arity
    if m > WBS_SAMPLED_MAX_DIM:
        raise BudgetExceededError(f"sampled_weak_parity_bs limited to dimension <= {WBS_SAMPLED_MAX_DIM}, got {m}")
    y = local_point(rf, x)
    table = rf.local.table
    full = (1 << (1 << m)) - 1
    if table == 0 or table == full:
        return 0, Gf2Matrix.identity(m)
    fy = (table >> y) & 1
    best = None
    best_b = None
    for b in [Gf2Matrix.identity(m)] + sample_gl(m, samples, seed):
        cols = b.transpose().row_bits
        sums = _span_order(list(cols))
        bm = 0
        for s_idx in range(1, 1 << m):
            if ((table >> (y ^ sums[s_idx])) & 1) != fy:
                bm |= 1 << s_idx
        v = _max_packing(m, bm)
        if best is None or v < best:
            best, best_b = v, b
    return best, best_b


_wbs_agg_cache: dict[tuple[int, int], int] = {}


def _wbs_aggregate(m: int, table: int) -> int:
    got = _wbs_agg_cache.get((m, table))
    if got is not None:
        return got
    full = (1 << (1 << m)) - 1
    if table == 0 or table == full:
        out = 0
    else:
        out = 0
        for y in range(1 << m):
            v, _ = _wbs_point(m, table, y)
            if v > out:
                out = v
                if out == m:
                    break
    if m <= 4:
        _wbs_agg_cache[(m, table)] = out
    return out


def wbs_xor(f: BooleanFunction | RestrictedFunction) -> int:
    """Weak parity block sensitivity: max over inputs of weak_parity_bs."""
    rf = _localize(f)
    m = rf.local.arity
    if m > WBS_EXACT_MAX_DIM:
        raise BudgetExceededError(f"wbs_xor limited to dimension <= {WBS_EXACT_MAX_DIM}, got {m}")
    return _wbs_aggregate(m, rf.local.table)


# ---------------------------------------------------------------------------
# parity block sensitivity
# ---------------------------------------------------------------------------

def parity_bs(f: BooleanFunction) -> tuple[int, Coset]:
    """max over cosets H of wbs_xor(f restricted to H), with a witness H.

    Scans directions by decreasing dimension (canonical subspace order),
    right-hand sides increasing.
    """
    n = f.arity
    if n > PBS_EXACT_MAX_ARITY:
        raise BudgetExceededError(
            f"parity_bs exact search limited to arity <= {PBS_EXACT_MAX_ARITY}, got {n}; use sampled_parity_bs"
        )
    best = -1
    witness = None
    for dim in range(n, -1, -1):
        for sub in enumerate_subspaces(n, dim):
            wrows = _kernel_bits(list(sub.basis.row_bits), n)
            k = len(wrows)
            for rhs in range(1 << k):
                coset = Coset(n, Gf2Matrix.from_bits(wrows, n), Gf2Vector(k, rhs))
                rf = restrict(f, coset)
                v = _wbs_aggregate(rf.local.arity, rf.local.table)
                if v > best:
                    best, witness = v, coset
                    if best == n:
                        return best, witness
    return best, witness


def sampled_parity_bs(f: BooleanFunction, samples: int, seed: int) -> tuple[int, Coset]:
    """Seeded sampled variant; the result is an estimate (a lower bound
    of the true maximum, from the cosets tried)."""
    import random

    n = f.arity
    if n > PBS_SAMPLED_MAX_ARITY:
        raise BudgetExceededError(f"sampled_parity_bs limited to arity <= {PBS_SAMPLED_MAX_ARITY}, got {n}")
    rnd = random.Random(seed)
    best = -1
    witness = None
    full = Coset.full_space(n)
    candidates = [full] if n <= WBS_EXACT_MAX_DIM else []
    while len(candidates) < samples:
        dim = rnd.randint(0, min(n, WBS_EXACT_MAX_DIM))
        rows = []
        ech: list[int] = []
        while len(rows) < n - dim:
            v = rnd.getrandbits(n)
            red = v
            for r in sorted(ech, key=lambda r: r & -r):
                if red & (r & -r):
                    red ^= r
            if red:
                rows.append(v)
                ech.append(red)
        rhs = [rnd.getrandbits(1) for _ in rows]
        coset = _solve_bits(rows, rhs, n)
        if coset is not None:
            candidates.append(coset)
    for coset in candidates:
        rf = restrict(f, coset)
        v = _wbs_aggregate(rf.local.arity, rf.local.table)
        if v > best:
            best, witness = v, coset
    return best, witness
