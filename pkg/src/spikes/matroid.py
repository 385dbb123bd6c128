"""Matroids on labeled ground sets.

Two representations sit behind one interface: a GF(2) matrix whose
columns are the ground set (vector matroids), or an explicit circuit
family (mandatory once circuit-hyperplane relaxation leaves the binary
world).  Every oracle here is a pure function over immutable values, so
all of them can be fanned out across processes without synchronization.

Ground sets use the label alphabet x1..xr, y1..yr, t, alpha, gamma and
are kept in that canonical order; arbitrary labels sort after them.
Circuit families are canonically ordered by (size, labels), which fixes
reporting and equality semantics everywhere above this module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, permutations
from typing import TYPE_CHECKING, Callable, Iterable, Iterator

from . import gf2
from .errors import (
    InvalidCircuitFamily,
    MemoryBudget,
    UnknownLabel,
    Unsupported,
)
from .gf2 import GF2Matrix

if TYPE_CHECKING:  # pragma: no cover
    from .spike import SpikeDescriptor

_XY = re.compile(r"([xy])([0-9]+)\Z")
_FIXED = {"t": (2, 0, ""), "alpha": (3, 0, ""), "gamma": (4, 0, "")}


def label_key(label: str) -> tuple[int, int, str]:
    """Sort key giving the canonical order x1..xr, y1..yr, t, alpha, gamma."""
    fixed = _FIXED.get(label)
    if fixed is not None:
        return fixed
    m = _XY.match(label)
    if m:
        return (0 if m.group(1) == "x" else 1, int(m.group(2)), "")
    return (5, 0, label)


def sort_labels(labels: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(labels, key=label_key))


def _circuit_key(circuit: frozenset[str]) -> tuple:
    return (len(circuit), tuple(label_key(l) for l in sort_labels(circuit)))


def _masks_of(members: Iterable[frozenset[str]]) -> tuple[dict[str, int], list[int]]:
    """Bitmask encoding of sets over the union of their labels."""
    labels = sort_labels(set().union(*members) if members else ())
    index = {lab: i for i, lab in enumerate(labels)}
    masks = []
    for c in members:
        bits = 0
        for lab in c:
            bits |= 1 << index[lab]
        masks.append(bits)
    return index, masks


@dataclass(frozen=True)
class CircuitFamily:
    """Canonical antichain of circuits (frozensets of element labels).

    Members are deduplicated and sorted by size, then lexicographically on
    their sorted labels.  Construction rejects empty members and any pair
    in a subset relation.
    """

    circuits: tuple[frozenset[str], ...]

    def __post_init__(self) -> None:
        members = {frozenset(c) for c in self.circuits}
        if any(not c for c in members):
            raise InvalidCircuitFamily("a circuit cannot be empty")
        ordered = sorted(members, key=_circuit_key)
        _, masks = _masks_of(ordered)
        for i in range(len(masks)):
            mi = masks[i]
            for j in range(i):
                if masks[j] & mi == masks[j]:
                    raise InvalidCircuitFamily(
                        f"{sorted(ordered[j])} is contained in {sorted(ordered[i])}"
                    )
        object.__setattr__(self, "circuits", tuple(ordered))

    @classmethod
    def of(cls, circuits: Iterable[Iterable[str]]) -> "CircuitFamily":
        return cls(tuple(frozenset(c) for c in circuits))

    @cached_property
    def members(self) -> frozenset[frozenset[str]]:
        return frozenset(self.circuits)

    def __len__(self) -> int:
        return len(self.circuits)

    def __iter__(self) -> Iterator[frozenset[str]]:
        return iter(self.circuits)

    def __contains__(self, circuit: Iterable[str]) -> bool:
        return frozenset(circuit) in self.members

    def histogram(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.circuits:
            out[len(c)] = out.get(len(c), 0) + 1
        return out

    def labels(self) -> tuple[str, ...]:
        return sort_labels(set().union(*self.circuits) if self.circuits else ())


@dataclass(frozen=True)
class VectorRep:
    """GF(2) column representation; the matroid is the vector matroid."""

    matrix: GF2Matrix


@dataclass(frozen=True)
class CircuitRep:
    """Explicit circuit family representation."""

    family: CircuitFamily


@dataclass(frozen=True)
class Matroid:
    ground: tuple[str, ...]
    rep: VectorRep | CircuitRep

    def __post_init__(self) -> None:
        object.__setattr__(self, "ground", tuple(self.ground))
        if len(set(self.ground)) != len(self.ground):
            raise UnknownLabel("duplicate ground labels")
        if isinstance(self.rep, VectorRep):
            if self.rep.matrix.col_labels != self.ground:
                raise UnknownLabel("matrix columns do not match the ground set")
        else:
            stray = set(self.rep.family.labels()) - set(self.ground)
            if stray:
                raise UnknownLabel(f"circuit labels outside ground set: {sorted(stray)}")

    @classmethod
    def from_matrix(cls, matrix: GF2Matrix) -> "Matroid":
        order = sort_labels(matrix.col_labels)
        if order != matrix.col_labels:
            matrix = matrix.with_columns(order)
        return cls(order, VectorRep(matrix))

    @classmethod
    def from_circuits(
        cls,
        ground: Iterable[str],
        circuits: Iterable[Iterable[str]] | CircuitFamily,
        validate: bool = True,
    ) -> "Matroid":
        family = (
            circuits
            if isinstance(circuits, CircuitFamily)
            else CircuitFamily.of(circuits)
        )
        ground = sort_labels(ground)
        m = cls(ground, CircuitRep(family))
        if validate and not verify_circuit_axioms(family, ground):
            raise InvalidCircuitFamily("family fails the circuit axioms")
        return m

    @property
    def matrix(self) -> GF2Matrix:
        if not isinstance(self.rep, VectorRep):
            raise Unsupported("matroid has no matrix representation")
        return self.rep.matrix

    def size(self) -> int:
        return len(self.ground)


def circuit_supports(
    matrix: GF2Matrix, max_free: int = gf2.DEFAULT_MAX_FREE
) -> tuple[int, ...]:
    """Circuits of the vector matroid as column bitmasks.

    These are the minimal nonzero supports among the kernel vectors of the
    matrix, ordered by (popcount, value).
    """
    vectors = gf2.nullspace_ints(matrix, max_free)
    supports = sorted((v for v in vectors if v), key=lambda v: (v.bit_count(), v))
    minimal: list[int] = []
    for v in supports:
        if not any(m & v == m for m in minimal):
            minimal.append(v)
    return tuple(minimal)


@lru_cache(maxsize=4096)
def circuits(m: Matroid) -> CircuitFamily:
    """Circuit family of the matroid, in canonical order."""
    if isinstance(m.rep, CircuitRep):
        return m.rep.family
    labels = m.ground
    fam = [
        frozenset(labels[i] for i in range(len(labels)) if mask >> i & 1)
        for mask in circuit_supports(m.rep.matrix)
    ]
    return CircuitFamily.of(fam)


def circuits_bruteforce(
    ground: Iterable[str], indep: Callable[[frozenset[str]], bool]
) -> CircuitFamily:
    """Minimal dependent sets by direct subset enumeration.

    Independent oracle of the whole matroid; used as the slow cross-check
    against the kernel-support path.
    """
    ground = sort_labels(ground)
    if len(ground) > 20:
        raise MemoryBudget(f"{len(ground)} elements is past the brute-force bound")
    found: list[frozenset[str]] = []
    for size in range(1, len(ground) + 1):
        for combo in combinations(ground, size):
            s = frozenset(combo)
            if any(c <= s for c in found):
                continue
            if not indep(s):
                found.append(s)
    return CircuitFamily.of(found)


@lru_cache(maxsize=4096)
def _column_int_map(matrix: GF2Matrix) -> dict[str, int]:
    cols = matrix.column_ints()
    return {lab: cols[j] for j, lab in enumerate(matrix.col_labels)}


def _circuit_masks(m: Matroid) -> tuple[dict[str, int], list[int]]:
    index = {lab: i for i, lab in enumerate(m.ground)}
    masks = []
    for c in circuits(m):
        bits = 0
        for lab in c:
            bits |= 1 << index[lab]
        masks.append(bits)
    return index, masks


def rank_of(m: Matroid, subset: Iterable[str]) -> int:
    """Matroid rank of a subset of the ground set."""
    labels = tuple(subset)
    stray = set(labels) - set(m.ground)
    if stray:
        raise UnknownLabel(f"labels outside ground set: {sorted(stray)}")
    if isinstance(m.rep, VectorRep):
        colmap = _column_int_map(m.rep.matrix)
        return gf2.rank_of_ints(colmap[l] for l in labels)
    index, cmasks = _circuit_masks(m)
    current = 0
    r = 0
    for lab in sort_labels(labels):
        trial = current | (1 << index[lab])
        if not any(cm & trial == cm for cm in cmasks):
            current = trial
            r += 1
    return r


def independence_oracle(m: Matroid) -> Callable[[frozenset[str]], bool]:
    """Subset independence test backed by the matroid's own representation."""
    if isinstance(m.rep, VectorRep):
        colmap = _column_int_map(m.rep.matrix)

        def indep(s: frozenset[str]) -> bool:
            return gf2.rank_of_ints(colmap[l] for l in s) == len(s)

    else:
        members = circuits(m).members

        def indep(s: frozenset[str]) -> bool:
            return not any(c <= s for c in members)

    return indep


def _some_member_inside(masks_by_size: list[int], target: int) -> bool:
    limit = target.bit_count()
    for cm in masks_by_size:
        if cm.bit_count() > limit:
            return False
        if cm & target == cm:
            return True
    return False


def is_binary_by_symdiff(family: CircuitFamily) -> bool:
    """Symmetric-difference test: the matroid described by ``family`` is
    binary iff every C1 xor C2 of distinct circuits contains a circuit."""
    _, masks = _masks_of(list(family))
    masks_by_size = sorted(masks, key=lambda v: v.bit_count())
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if not _some_member_inside(masks_by_size, masks[i] ^ masks[j]):
                return False
    return True


def verify_circuit_axioms(family: CircuitFamily, ground: Iterable[str]) -> bool:
    """Check the circuit axioms: no empty member, antichain, and weak
    elimination (for distinct C1, C2 and e in both, some circuit lies in
    (C1 union C2) - e)."""
    ground = set(ground)
    members = list(family)
    if any(not c for c in members):
        return False
    if any(not c <= ground for c in members):
        return False
    _, masks = _masks_of(members)
    for i in range(len(masks)):
        for j in range(len(masks)):
            if i != j and masks[i] & masks[j] == masks[i]:
                return False
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            common = masks[i] & masks[j]
            union = masks[i] | masks[j]
            while common:
                low = common & -common
                target = union & ~low
                if not any(cm & target == cm for cm in masks):
                    return False
                common ^= low
    return True


def _subset_ranks_vector(matrix: GF2Matrix, order: tuple[str, ...]) -> list[int]:
    colmap = _column_int_map(matrix)
    cols = [colmap[l] for l in order]
    n = len(cols)
    ranks = [0] * (1 << n)
    bases: list[tuple[int, ...]] = [()] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        rest = mask ^ low
        v = cols[low.bit_length() - 1]
        basis = bases[rest]
        for b in basis:
            if v >> (b.bit_length() - 1) & 1:
                v ^= b
        if v:
            ranks[mask] = ranks[rest] + 1
            bases[mask] = tuple(
                sorted(basis + (v,), key=lambda x: -x.bit_length())
            )
        else:
            ranks[mask] = ranks[rest]
            bases[mask] = basis
    return ranks


def _subset_ranks_circuits(m: Matroid) -> list[int]:
    index, cmasks = _circuit_masks(m)
    n = len(m.ground)
    ranks = [0] * (1 << n)
    for mask in range(1, 1 << n):
        current = 0
        r = 0
        rest = mask
        while rest:
            low = rest & -rest
            trial = current | low
            if not any(cm & trial == cm for cm in cmasks):
                current = trial
                r += 1
            rest ^= low
        ranks[mask] = r
    return ranks


def is_3connected(m: Matroid) -> bool:
    """Exhaustive Tutte connectivity check.

    True iff the matroid is connected and no partition (S, E-S) with both
    sides of size >= 2 has rank(S) + rank(E-S) - rank(E) <= 1.  All 2**n
    subsets are scanned; simplicity and auditability beat asymptotics at
    this scale.
    """
    n = len(m.ground)
    if n > 16:
        raise MemoryBudget(f"2**{n} subset scan is past the connectivity bound")
    if isinstance(m.rep, VectorRep):
        ranks = _subset_ranks_vector(m.rep.matrix, m.ground)
    else:
        ranks = _subset_ranks_circuits(m)
    full_mask = (1 << n) - 1
    full = ranks[full_mask]
    for s in range(1, full_mask):
        if not s & 1:
            continue  # fix element 0 in S to halve the scan
        t = full_mask ^ s
        lam = ranks[s] + ranks[t] - full
        if lam <= 0:
            return False
        if lam <= 1 and s.bit_count() >= 2 and t.bit_count() >= 2:
            return False
    return True


def cocircuits(m: Matroid) -> CircuitFamily:
    """Minimal nonzero supports of the row space of the representing matrix."""
    if not isinstance(m.rep, VectorRep):
        raise Unsupported("cocircuits need a GF(2) matrix representation")
    matrix = m.rep.matrix
    reduced, pivots = gf2.rref(matrix)
    if len(pivots) > 20:
        raise MemoryBudget(f"row space has 2**{len(pivots)} vectors")
    vectors = [0]
    for row in reduced.rows:
        vectors.extend(v ^ row for v in list(vectors))
    supports = sorted((v for v in vectors if v), key=lambda v: (v.bit_count(), v))
    minimal: list[int] = []
    for v in supports:
        if not any(x & v == x for x in minimal):
            minimal.append(v)
    labels = matrix.col_labels
    return CircuitFamily.of(
        frozenset(labels[i] for i in range(len(labels)) if v >> i & 1)
        for v in minimal
    )


def matroids_equal(a: Matroid, b: Matroid) -> bool:
    """Same labeled ground set and identical circuit families."""
    return set(a.ground) == set(b.ground) and circuits(a) == circuits(b)


def _apply_mapping(family: CircuitFamily, mapping: dict[str, str]) -> frozenset:
    return frozenset(frozenset(mapping[l] for l in c) for c in family)


def _transversal_bits(desc: "SpikeDescriptor") -> list[int] | None:
    """Encode each transversal circuit as one bit per leg (1 = second
    element of the stored pair); None if any member is not a transversal."""
    out = []
    for c in desc.transversal_circuits:
        bits = 0
        for i, (p, q) in enumerate(desc.legs):
            inp, inq = p in c, q in c
            if inp == inq:
                return None
            if inq:
                bits |= 1 << i
        out.append(bits)
    return out


def spike_isomorphic(
    a: Matroid,
    b: Matroid,
    desc_a: "SpikeDescriptor",
    desc_b: "SpikeDescriptor",
) -> dict[str, str] | None:
    """Search tip- and leg-preserving label bijections from a onto b.

    Candidates map tip to tip and legs to legs (leg permutations times
    within-leg swaps).  The transversal families drive the search; any
    surviving candidate is verified against the full circuit families.
    Returns one mapping, or None.
    """
    r = desc_a.rank
    if r != desc_b.rank or len(a.ground) != len(b.ground):
        return None
    fam_a, fam_b = circuits(a), circuits(b)
    if fam_a.histogram() != fam_b.histogram():
        return None
    bits_a = _transversal_bits(desc_a)
    bits_b = _transversal_bits(desc_b)
    if bits_a is None or bits_b is None or len(bits_a) != len(bits_b):
        return None
    set_a, set_b = set(bits_a), set(bits_b)
    members_b = fam_b.members

    def build_mapping(perm: tuple[int, ...], flips: int) -> dict[str, str]:
        mapping = {desc_a.tip: desc_b.tip}
        for i, (p, q) in enumerate(desc_a.legs):
            tp, tq = desc_b.legs[perm[i]]
            if flips >> i & 1:
                tp, tq = tq, tp
            mapping[p], mapping[q] = tp, tq
        return mapping

    def permute(perm: tuple[int, ...], bits: int) -> int:
        out = 0
        for i in range(r):
            if bits >> i & 1:
                out |= 1 << perm[i]
        return out

    for perm in permutations(range(r)):
        if not set_a:
            candidates = [0]
        else:
            anchor = permute(perm, min(set_a))
            candidates = sorted({anchor ^ sb for sb in set_b})
        for flips_on_b in candidates:
            if {permute(perm, s) ^ flips_on_b for s in set_a} != set_b:
                continue
            # translate flips from b-leg positions back to a-leg positions
            flips = 0
            for i in range(r):
                if flips_on_b >> perm[i] & 1:
                    flips |= 1 << i
            mapping = build_mapping(perm, flips)
            if _apply_mapping(fam_a, mapping) == members_b:
                return mapping
    return None
