"""Evaluating a function through parity queries guided by certificates,
and canonical families of 1-certificates for nondeterministic use.

The evaluator repeatedly picks a smallest coset on which the current
restriction of f is constantly 1, queries its defining parities, and
either accepts (all answers matched) or shrinks the domain by the
observed answers.  The number of parity queries never exceeds
c0_xor(f) * c1_xor(f).
"""

from __future__ import annotations

from dataclasses import dataclass

from .boolfn import BooleanFunction, restrict
from .errors import BudgetExceededError, DimensionError, DomainError
from .gf2 import Coset, Gf2Vector, _kernel_bits, _solve_bits, _span_order, enumerate_subspaces, parity
from .parity import CERT_MAX_ARITY, ParityCertificate, _frames

__all__ = [
    "ParityOracle",
    "TraceStep",
    "EssentialSet",
    "evaluate_via_certificates",
    "essential_certificate_set",
    "verify_essential_set",
]


class ParityOracle:
    """Answers parity queries about a hidden input and counts them."""

    def __init__(self, hidden: Gf2Vector):
        self._hidden = hidden
        self.queries = 0

    @property
    def width(self) -> int:
        return self._hidden.width

    def query(self, c: Gf2Vector) -> int:
        if c.width != self._hidden.width:
            raise DimensionError("query width mismatch")
        self.queries += 1
        return parity(c.bits & self._hidden.bits)


@dataclass(frozen=True)
class TraceStep:
    """One round: the domain it started from, the 1-certificate tried,
    the queried rows with their answers, and whether they all matched."""

    domain: Coset
    certificate: ParityCertificate
    rows: tuple[Gf2Vector, ...]
    answers: tuple[int, ...]
    matched: bool
    domain_after: Coset | None

    def to_jsonable(self) -> dict:
        return {
            "domain": self.domain.to_jsonable(),
            "certificate": self.certificate.to_jsonable(),
            "rows": [r.to_string() for r in self.rows],
            "answers": list(self.answers),
            "matched": self.matched,
        }


def _min_one_certificate(rf) -> tuple[tuple[int, ...], list[int]] | None:
    """Smallest-codimension local coset on which the restriction is
    constantly 1: (dual basis rows, rhs bits), or None if no 1-input.

    Scan order: codimension ascending, canonical dual subspaces, rhs
    ascending; the first hit is the deterministic choice.
    """
    m = rf.local.arity
    table = rf.local.table
    if table == 0:
        return None
    for k in range(m + 1):
        level = _frames(m)[k] if m <= 5 else (
            (s.basis.row_bits, tuple(_kernel_bits(list(s.basis.row_bits), m))) for s in enumerate_subspaces(m, k)
        )
        for wrows, vrows in level:
            span = _span_order(list(vrows))
            for rhs in range(1 << k):
                # offset: pivot coordinates of the dual rows carry the rhs
                off = 0
                for i, w in enumerate(wrows):
                    if (rhs >> i) & 1:
                        off |= w & -w
                if all((table >> (off ^ v)) & 1 for v in span):
                    return wrows, [(rhs >> i) & 1 for i in range(k)]
    return None


def evaluate_via_certificates(
    f: BooleanFunction, oracle: ParityOracle
) -> tuple[int, int, list[TraceStep]]:
    """Evaluate f at the oracle's hidden input.

    Returns (value, total parity queries, per-round trace).
    """
    n = f.arity
    if n > CERT_MAX_ARITY:
        raise BudgetExceededError(f"evaluate_via_certificates limited to arity <= {CERT_MAX_ARITY}")
    if oracle.width != n:
        raise DimensionError("oracle width != arity")
    domain = Coset.full_space(n)
    trace: list[TraceStep] = []
    while True:
        rf = restrict(f, domain)
        if rf.local.is_constant():
            return rf.local.table & 1, oracle.queries, trace
        found = _min_one_certificate(rf)
        assert found is not None, "nonconstant restriction has a 1-input"
        wrows, rhs = found
        rows, amb_rhs = _lift_rows(rf, wrows, rhs)
        answers = tuple(oracle.query(Gf2Vector(n, c)) for c in rows)
        cert_coset = _solve_bits(list(rows), list(amb_rhs), n)
        assert cert_coset is not None
        step_rows = tuple(Gf2Vector(n, c) for c in rows)
        matched = list(answers) == list(amb_rhs)
        if matched:
            trace.append(TraceStep(domain, ParityCertificate(cert_coset, 1), step_rows, answers, True, None))
            return 1, oracle.queries, trace
        new_rows = list(domain.constraints.row_bits) + list(rows)
        new_rhs = [(domain.rhs.bits >> i) & 1 for i in range(domain.codim)] + list(answers)
        nxt = _solve_bits(new_rows, new_rhs, n)
        assert nxt is not None, "the hidden input satisfies its own answers"
        trace.append(TraceStep(domain, ParityCertificate(cert_coset, 1), step_rows, answers, False, nxt))
        domain = nxt


def _lift_rows(rf, wrows, rhs_bits) -> tuple[list[int], list[int]]:
    """Ambient rows and rhs for local constraints <y, w> = r."""
    n = rf.ambient.ncols
    erows = list(rf.basis.row_bits)
    rows = []
    out_rhs = []
    for w, r in zip(wrows, rhs_bits):
        if rf.offset.bits == 0 and erows == [1 << i for i in range(n)]:
            rows.append(w)
            out_rhs.append(r)
            continue
        sol = _solve_bits(erows, [(w >> i) & 1 for i in range(len(erows))], n)
        assert sol is not None
        cb = sol.min_member_bits()
        rows.append(cb)
        out_rhs.append(r ^ parity(rf.offset.bits & cb))
    return rows, out_rhs


# ---------------------------------------------------------------------------
# essential sets of 1-certificates
# ---------------------------------------------------------------------------

ESSENTIAL_MAX_ARITY = 8


@dataclass(frozen=True)
class EssentialSet:
    """1-certificates, all of codimension exactly codim, covering every
    1-input, with no member inside the union of the others."""

    codim: int
    certificates: tuple[Coset, ...]

    @property
    def size(self) -> int:
        return len(self.certificates)

    def to_jsonable(self) -> dict:
        return {"codim": self.codim, "certificates": [c.to_jsonable() for c in self.certificates]}


def essential_certificate_set(f: BooleanFunction) -> EssentialSet:
    """Deterministic essential set of 1-certificates of f.

    Build one minimal certificate per 1-input (ascending), pad each to
    codimension c1_xor(f) with the least independent constraints the
    anchor satisfies, deduplicate, then drop members contained in the
    union of the rest (restarting the scan after each removal).
    """
    from .parity import c1_xor

    n = f.arity
    if n > ESSENTIAL_MAX_ARITY:
        raise BudgetExceededError(f"essential_certificate_set limited to arity <= {ESSENTIAL_MAX_ARITY}")
    if f.table == 0:
        raise DomainError("essential set needs at least one 1-input")
    d = c1_xor(f)
    certs: list[Coset] = []
    seen = set()
    for xb in range(1 << n):
        if not (f.table >> xb) & 1:
            continue
        rows, rhs = _anchored_min_certificate(f, xb)
        rows, rhs = _pad_to_codim(rows, rhs, xb, n, d)
        coset = _solve_bits(rows, rhs, n)
        assert coset is not None and coset.codim == d
        if coset not in seen:
            seen.add(coset)
            certs.append(coset)
    bitmaps = [_coset_bitmap(cs) for cs in certs]
    removed = True
    while removed:
        removed = False
        for i in range(len(certs)):
            others = 0
            for j, bm in enumerate(bitmaps):
                if j != i:
                    others |= bm
            if bitmaps[i] & ~others == 0:
                del certs[i]
                del bitmaps[i]
                removed = True
                break
    return EssentialSet(d, tuple(certs))


def _anchored_min_certificate(f: BooleanFunction, xb: int) -> tuple[list[int], list[int]]:
    n = f.arity
    table = f.table
    for k in range(n + 1):
        level = _frames(n)[k] if n <= 5 else (
            (s.basis.row_bits, tuple(_kernel_bits(list(s.basis.row_bits), n))) for s in enumerate_subspaces(n, k)
        )
        for wrows, vrows in level:
            if all((table >> (xb ^ v)) & 1 for v in _span_order(list(vrows))):
                return list(wrows), [parity(w & xb) for w in wrows]
    raise AssertionError("unreachable: the anchor's point coset certifies")


def _pad_to_codim(rows: list[int], rhs: list[int], xb: int, n: int, d: int) -> tuple[list[int], list[int]]:
    """Append the smallest constraint rows independent of ``rows`` (the
    anchor fixes each rhs) until reaching codimension d."""
    from .gf2 import _rref_bits

    rows = list(rows)
    rhs = list(rhs)
    while len(rows) < d:
        for cand in range(1, 1 << n):
            red, _ = _rref_bits(rows + [cand], n)
            if len(red) == len(rows) + 1:
                rows.append(cand)
                rhs.append(parity(cand & xb))
                break
    return rows, rhs


def _coset_bitmap(cs: Coset) -> int:
    out = 0
    for b in cs.member_bits():
        out |= 1 << b
    return out


def verify_essential_set(f: BooleanFunction, ess: EssentialSet) -> None:
    """Raise DomainError if ess is not a valid essential set for f."""
    n = f.arity
    ones = 0
    for xb in range(1 << n):
        if (f.table >> xb) & 1:
            ones |= 1 << xb
    if ones == 0:
        raise DomainError("function has no 1-input")
    bitmaps = []
    for cs in ess.certificates:
        if cs.codim != ess.codim:
            raise DomainError("certificate codimension differs from the set's")
        bm = _coset_bitmap(cs)
        if bm & ~ones:
            raise DomainError("certificate contains a 0-input")
        bitmaps.append(bm)
    union = 0
    for bm in bitmaps:
        union |= bm
    if union & ones != ones:
        raise DomainError("uncovered 1-input")
    for i, bm in enumerate(bitmaps):
        others = 0
        for j, other in enumerate(bitmaps):
            if j != i:
                others |= other
        if bm & ~others == 0:
            raise DomainError("redundant certificate")
