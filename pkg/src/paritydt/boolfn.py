"""Boolean functions as packed truth tables, with restriction to cosets
and the exact Walsh-Hadamard spectrum.

A function f on n variables is stored as an int whose bit i is
f(x) for the input x with packed index i (see gf2 for the packing).
Truth-table display strings list f at index 0 leftmost, so OR on two
variables prints as "0111".

Fourier coefficients use the 0/1-valued convention
    fhat(w) = 2^-n * sum_x (-1)^<x,w> f(x),
kept exact as dyadic rationals (integer numerator over 2^n).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import BudgetExceededError, DimensionError, DomainError, FunctionSpecError
from .gf2 import MAX_WIDTH, Coset, Gf2Matrix, Gf2Vector, _rref_bits, _span_order, parity

__all__ = [
    "BooleanFunction",
    "RestrictedFunction",
    "FourierSpectrum",
    "shift",
    "rotate",
    "restrict",
    "restrict_with_frame",
    "as_restricted",
    "local_point",
    "fourier",
    "parse_function_spec",
]


@dataclass(frozen=True)
class BooleanFunction:
    """A total function {0,1}^arity -> {0,1} as a packed truth table.

    Arity 0 (a single point, as produced by restricting to a point
    coset) is allowed; the parser only accepts arity >= 1.
    """

    arity: int
    table: int

    def __post_init__(self):
        if not 0 <= self.arity <= MAX_WIDTH:
            raise DimensionError(f"arity {self.arity} outside 0..{MAX_WIDTH}")
        if not 0 <= self.table < (1 << (1 << self.arity)):
            raise DimensionError("truth table out of range for arity")

    @classmethod
    def from_table_string(cls, s: str) -> "BooleanFunction":
        n = (len(s) - 1).bit_length()
        if not s or len(s) != (1 << n):
            raise DimensionError(f"table length {len(s)} is not a power of two")
        t = 0
        for i, ch in enumerate(s):
            if ch not in "01":
                raise DimensionError(f"invalid table character {ch!r}")
            if ch == "1":
                t |= 1 << i
        return cls(n, t)

    def value_at(self, idx: int) -> int:
        """f at the packed input index."""
        if not 0 <= idx < (1 << self.arity):
            raise DimensionError(f"index {idx} out of range for arity {self.arity}")
        return (self.table >> idx) & 1

    def evaluate(self, x: Gf2Vector) -> int:
        if x.width != self.arity:
            raise DimensionError(f"input width {x.width} != arity {self.arity}")
        return (self.table >> x.bits) & 1

    def is_constant(self) -> bool:
        return self.table == 0 or self.table == (1 << (1 << self.arity)) - 1

    def to_table_string(self) -> str:
        return "".join(str((self.table >> i) & 1) for i in range(1 << self.arity))

    @property
    def spec(self) -> str:
        return f"tt:{self.arity}:{self.to_table_string()}"


@dataclass(frozen=True)
class RestrictedFunction:
    """f viewed on an ambient coset H = offset + span(basis rows).

    ``local`` is the function g'(y) = f(offset + sum_i y_i b_i) of arity
    dim(H); the canonical frame (lexicographically least offset, RREF
    basis) is what restrict() produces, but any frame spanning H is a
    valid presentation and all measures are frame-independent.
    """

    ambient: Coset
    local: BooleanFunction
    basis: Gf2Matrix
    offset: Gf2Vector

    @property
    def ambient_arity(self) -> int:
        return self.ambient.ncols

    def ambient_point(self, y: int) -> int:
        """Packed ambient point for the packed local point y."""
        acc = self.offset.bits
        rows = self.basis.row_bits
        i = 0
        while y:
            if y & 1:
                acc ^= rows[i]
            y >>= 1
            i += 1
        return acc

    def evaluate(self, x: Gf2Vector) -> int:
        return self.local.value_at(local_point(self, x))


def as_restricted(f: BooleanFunction) -> RestrictedFunction:
    """f presented on the full space with the identity frame."""
    return RestrictedFunction(
        ambient=Coset.full_space(f.arity),
        local=f,
        basis=Gf2Matrix.identity(f.arity),
        offset=Gf2Vector.zeros(f.arity),
    )


def local_point(rf: RestrictedFunction, x: Gf2Vector) -> int:
    """Local coordinates of an ambient point of the domain coset."""
    if x.width != rf.ambient.ncols:
        raise DimensionError("width mismatch")
    if not rf.ambient.contains(x):
        raise DomainError(f"point {x} is not in the domain coset")
    v = x.bits ^ rf.offset.bits
    y = 0
    rows = rf.basis.row_bits
    # reduce v against an echelonized copy of the frame, tracking which
    # original rows went into the combination
    ech: list[tuple[int, int]] = []  # (row value, local mask)
    for i, r in enumerate(rows):
        m = 1 << i
        for val, lm in ech:
            if r & (val & -val):
                r ^= val
                m ^= lm
        ech.append((r, m))
    for val, lm in ech:
        if v & (val & -val):
            v ^= val
            y ^= lm
    if v:
        raise DomainError("point not reachable from the frame (frame does not span the coset)")
    return y


# ---------------------------------------------------------------------------
# table kernels shared with the measure modules
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _low_mask(n: int, b: int) -> int:
    """Positions 0..2^n-1 whose bit b is clear, as a bitmask."""
    seg = (1 << (1 << b)) - 1
    step = 1 << (b + 1)
    out = 0
    for off in range(0, 1 << n, step):
        out |= seg << off
    return out


def _table_xor_translate(t: int, n: int, c: int) -> int:
    """Table of x -> f(x ^ c), from the table of f."""
    for b in range(n):
        if (c >> b) & 1:
            blk = 1 << b
            lo = _low_mask(n, b)
            t = ((t & lo) << blk) | ((t >> blk) & lo)
    return t


def _table_partner(t: int, n: int, b: int) -> int:
    blk = 1 << b
    lo = _low_mask(n, b)
    return ((t & lo) << blk) | ((t >> blk) & lo)


def shift(f: BooleanFunction, c: Gf2Vector) -> BooleanFunction:
    """The function x -> f(x + c)."""
    if c.width != f.arity:
        raise DimensionError(f"shift width {c.width} != arity {f.arity}")
    return BooleanFunction(f.arity, _table_xor_translate(f.table, f.arity, c.bits))


def rotate(f: BooleanFunction, a: Gf2Matrix) -> BooleanFunction:
    """The function x -> f(a x) for invertible a."""
    n = f.arity
    if a.ncols != n or a.nrows != n:
        raise DimensionError("rotation matrix shape mismatch")
    if not a.is_invertible():
        raise DomainError("rotation matrix is singular")
    cols = [0] * n
    rows = a.row_bits
    for j in range(n):
        acc = 0
        for i in range(n):
            acc |= ((rows[i] >> j) & 1) << i
        cols[j] = acc
    images = [0] * (1 << n)
    for x in range(1, 1 << n):
        low = (x & -x).bit_length() - 1
        images[x] = images[x & (x - 1)] ^ cols[low]
    t = f.table
    out = 0
    for x, ax in enumerate(images):
        out |= ((t >> ax) & 1) << x
    return BooleanFunction(n, out)


def restrict(f: BooleanFunction, h: Coset) -> RestrictedFunction:
    """f on the coset h, re-indexed through the canonical frame
    (offset = least member, basis = RREF basis of the direction space)."""
    if h.ncols != f.arity:
        raise DimensionError("coset width != arity")
    rows = h.direction_rows()
    off = h.min_member_bits()
    return _restrict_frame(f, h, rows, off)


def restrict_with_frame(f: BooleanFunction, h: Coset, basis_rows: list[int], offset: int) -> RestrictedFunction:
    """f on h through an explicit frame; the frame must span h exactly."""
    if h.ncols != f.arity:
        raise DimensionError("coset width != arity")
    red, _ = _rref_bits(basis_rows, h.ncols)
    if len(red) != len(basis_rows) or len(basis_rows) != h.dim:
        raise DomainError("frame rows must be an independent basis of the direction space")
    if not h._contains_bits(offset):
        raise DomainError("frame offset is outside the coset")
    canon = h.direction_rows()
    red2, _ = _rref_bits(canon + basis_rows, h.ncols)
    if len(red2) != h.dim:
        raise DomainError("frame does not span the coset direction")
    return _restrict_frame(f, h, list(basis_rows), offset)


def _restrict_frame(f: BooleanFunction, h: Coset, rows: list[int], off: int) -> RestrictedFunction:
    pts = _span_order(rows)
    t = f.table
    local = 0
    for y, p in enumerate(pts):
        local |= ((t >> (off ^ p)) & 1) << y
    return RestrictedFunction(
        ambient=h,
        local=BooleanFunction(len(rows), local),
        basis=Gf2Matrix.from_bits(rows, h.ncols),
        offset=Gf2Vector(h.ncols, off),
    )


# ---------------------------------------------------------------------------
# Fourier
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class FourierSpectrum:
    """Exact spectrum: fhat(w) = numerator(w) / 2^arity."""

    arity: int
    numerators: np.ndarray

    def numerator(self, w: int) -> int:
        return int(self.numerators[w])

    def coefficient(self, w: int) -> Fraction:
        return Fraction(int(self.numerators[w]), 1 << self.arity)

    @property
    def sparsity(self) -> int:
        return int(np.count_nonzero(self.numerators))

    def support(self) -> list[int]:
        return [int(w) for w in np.nonzero(self.numerators)[0]]

    def nonzero_items(self) -> list[tuple[int, Fraction]]:
        return [(w, self.coefficient(w)) for w in self.support()]


def fourier(f: BooleanFunction) -> FourierSpectrum:
    """Walsh-Hadamard transform of the 0/1-valued truth table, exact in int64
    (|numerator| <= 2^n <= 2^24)."""
    n = f.arity
    nbytes = max(1, (1 << n) // 8)
    raw = np.frombuffer(f.table.to_bytes(nbytes, "little"), dtype=np.uint8)
    arr = np.unpackbits(raw, bitorder="little")[: 1 << n].astype(np.int64)
    for b in range(n):
        arr = arr.reshape(-1, 2, 1 << b)
        top = arr[:, 0, :] + arr[:, 1, :]
        bot = arr[:, 0, :] - arr[:, 1, :]
        arr = np.stack((top, bot), axis=1)
    return FourierSpectrum(n, arr.reshape(-1))


# ---------------------------------------------------------------------------
# function-spec parser
# ---------------------------------------------------------------------------

def parse_function_spec(spec: str) -> BooleanFunction:
    """Parse "tt:<n>:<bits>", "anf:<n>:<poly>" or "zoo:<name>:<n>".

    ANF terms are "1" or products x<i>*x<j>*... joined by "+", with
    1-based variable indices; whitespace is ignored.
    """
    head, sep, rest = spec.partition(":")
    if not sep:
        raise FunctionSpecError(f"missing ':' in spec {spec!r}", len(spec))
    if head == "tt":
        return _parse_tt(rest, len(head) + 1)
    if head == "anf":
        return _parse_anf(rest, len(head) + 1)
    if head == "zoo":
        from .construct import zoo

        name, sep2, nstr = rest.partition(":")
        if not sep2:
            raise FunctionSpecError("zoo spec needs zoo:<name>:<n>", len(spec))
        try:
            n = int(nstr)
        except ValueError:
            raise FunctionSpecError(f"bad zoo arity {nstr!r}", spec.rfind(":") + 1) from None
        return zoo(name, n)
    raise FunctionSpecError(f"unknown spec kind {head!r}", 0)


def _parse_arity(nstr: str, base: int) -> int:
    try:
        n = int(nstr)
    except ValueError:
        raise FunctionSpecError(f"bad arity {nstr!r}", base) from None
    if not 1 <= n <= MAX_WIDTH:
        raise FunctionSpecError(f"arity {n} outside 1..{MAX_WIDTH}", base)
    return n


def _parse_tt(rest: str, base: int) -> BooleanFunction:
    nstr, sep, bits = rest.partition(":")
    if not sep:
        raise FunctionSpecError("tt spec needs tt:<n>:<bits>", base + len(rest))
    n = _parse_arity(nstr, base)
    body = base + len(nstr) + 1
    if len(bits) != (1 << n):
        raise FunctionSpecError(f"table length {len(bits)} != 2^{n}", body)
    t = 0
    for i, ch in enumerate(bits):
        if ch not in "01":
            raise FunctionSpecError(f"invalid table character {ch!r}", body + i)
        if ch == "1":
            t |= 1 << i
    return BooleanFunction(n, t)


def _parse_anf(rest: str, base: int) -> BooleanFunction:
    nstr, sep, poly = rest.partition(":")
    if not sep:
        raise FunctionSpecError("anf spec needs anf:<n>:<poly>", base + len(rest))
    n = _parse_arity(nstr, base)
    body = base + len(nstr) + 1
    terms: list[int | None] = []  # None = the constant term 1, else variable mask
    pos = 0
    for chunk in poly.split("+"):
        chunk_start = body + pos
        pos += len(chunk) + 1
        term = chunk.strip()
        if not term:
            raise FunctionSpecError("empty term", chunk_start)
        if term == "1":
            terms.append(None)
            continue
        mask = 0
        for factor in term.split("*"):
            factor = factor.strip()
            if not factor.startswith("x"):
                raise FunctionSpecError(f"bad factor {factor!r}", chunk_start)
            try:
                i = int(factor[1:])
            except ValueError:
                raise FunctionSpecError(f"bad variable {factor!r}", chunk_start) from None
            if not 1 <= i <= n:
                raise FunctionSpecError(f"variable x{i} outside 1..x{n}", chunk_start)
            mask |= 1 << (i - 1)
        terms.append(mask)
    t = 0
    for x in range(1 << n):
        acc = 0
        for term in terms:
            if term is None:
                acc ^= 1
            elif (x & term) == term:
                acc ^= 1
        t |= acc << x
    return BooleanFunction(n, t)
