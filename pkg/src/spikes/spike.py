"""Spike construction, structure recognition, and relaxation.

A rank-r spike (r >= 3) lives on 2r+1 elements: a tip t, and legs
L_i = {t, x_i, y_i}.  Its circuits are the legs, all leg-pair unions
{x_i, y_i, x_j, y_j}, an optional family of size-r leg transversals in
which no two members share more than r-2 elements, and every
(r+1)-subset containing none of the above.  With the transversal family
empty the spike is called free.

The unique GF(2)-representable spike of rank r is the vector matroid of
the r x (2r+1) matrix [I | J - I | 1]; at rank 3 it is the Fano plane.
Its circuits split into four families, here called phi_1..phi_4.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import InvalidC3, NotCircuitHyperplane, RankTooSmall
from .gf2 import GF2Matrix
from .matroid import (
    CircuitFamily,
    Matroid,
    circuits,
    independence_oracle,
    label_key,
    rank_of,
    sort_labels,
)


def spike_labels(r: int) -> tuple[str, ...]:
    """Canonical ground set x1..xr, y1..yr, t."""
    _require_rank(r)
    return tuple(
        [f"x{i}" for i in range(1, r + 1)] + [f"y{i}" for i in range(1, r + 1)] + ["t"]
    )


def leg_pairs(r: int) -> tuple[tuple[str, str], ...]:
    return tuple((f"x{i}", f"y{i}") for i in range(1, r + 1))


def _require_rank(r: int) -> None:
    if r < 3:
        raise RankTooSmall(f"spikes need rank >= 3, got {r}")


def binary_spike_matrix(r: int) -> GF2Matrix:
    """The r x (2r+1) matrix [I | J - I | 1] with columns x1..xr, y1..yr, t."""
    _require_rank(r)
    ones = (1 << r) - 1
    rows = []
    for i in range(r):
        x_block = 1 << i
        y_block = (ones ^ (1 << i)) << r
        t_block = 1 << (2 * r)
        rows.append(x_block | y_block | t_block)
    return GF2Matrix(tuple(rows), spike_labels(r))


def binary_spike(r: int) -> Matroid:
    """The unique binary rank-r spike as a vector matroid."""
    return Matroid.from_matrix(binary_spike_matrix(r))


@lru_cache(maxsize=None)
def phi_family(r: int, k: int) -> CircuitFamily:
    """The k-th circuit family of the rank-r binary spike.

    phi_1: the legs; phi_2: the leg-pair unions; phi_3: the size-r leg
    transversals picking an odd number of y's; phi_4: the complements
    E - C of phi_3 members for odd r, and (E - C) xor {x_(r-1), y_(r-1)}
    for even r.
    """
    _require_rank(r)
    xs = [f"x{i}" for i in range(1, r + 1)]
    ys = [f"y{i}" for i in range(1, r + 1)]
    if k == 1:
        return CircuitFamily.of({("t", xs[i], ys[i]) for i in range(r)})
    if k == 2:
        return CircuitFamily.of(
            {(xs[i], ys[i], xs[j], ys[j]) for i in range(r) for j in range(i + 1, r)}
        )
    if k == 3:
        return CircuitFamily.of(_odd_transversals(r))
    if k == 4:
        everything = frozenset(spike_labels(r))
        swap = frozenset({f"x{r - 1}", f"y{r - 1}"})
        members = []
        for c in _odd_transversals(r):
            comp = everything - c
            members.append(comp if r % 2 else comp ^ swap)
        return CircuitFamily.of(members)
    raise ValueError(f"k must be 1..4, got {k}")


def _odd_transversals(r: int) -> list[frozenset[str]]:
    out = []
    for mask in range(1 << r):
        if mask.bit_count() % 2 == 0:
            continue
        out.append(
            frozenset(
                f"y{i + 1}" if mask >> i & 1 else f"x{i + 1}" for i in range(r)
            )
        )
    return out


@lru_cache(maxsize=None)
def phi_union(r: int) -> CircuitFamily:
    """phi_1 .. phi_4 together: the full circuit family of the binary spike."""
    members: list[frozenset[str]] = []
    for k in (1, 2, 3, 4):
        members.extend(phi_family(r, k))
    return CircuitFamily.of(members)


def circuit_count_formula(r: int) -> int:
    """Circuit count of a rank-r binary spike: 2**r + r(r+1)/2."""
    _require_rank(r)
    return 2**r + r * (r + 1) // 2


@dataclass(frozen=True)
class SpikeDescriptor:
    """A (tip, legs) decomposition of a spike.

    ``legs`` holds the r tip-free pairs in canonical order, and
    ``transversal_circuits`` the size-r transversal circuits (the family
    that may be relaxed away one circuit-hyperplane at a time).
    """

    rank: int
    tip: str
    legs: tuple[tuple[str, str], ...]
    transversal_circuits: CircuitFamily


def build_spike(r: int, c3: CircuitFamily | None = None) -> Matroid:
    """Spike with the given transversal-circuit family (free spike if empty).

    Raises InvalidC3 unless every member picks exactly one element per leg
    pair and no two members share more than r-2 elements.
    """
    _require_rank(r)
    labels = spike_labels(r)
    pairs = leg_pairs(r)
    c3_members = list(c3) if c3 is not None else []
    for c in c3_members:
        if len(c) != r:
            raise InvalidC3(f"{sorted(c)} does not have size {r}")
        for p, q in pairs:
            if (p in c) == (q in c):
                raise InvalidC3(f"{sorted(c)} is not a leg transversal")
    for a, b in combinations(c3_members, 2):
        if len(a & b) > r - 2:
            raise InvalidC3(
                f"{sorted(a)} and {sorted(b)} share more than {r - 2} elements"
            )
    c1 = [frozenset({"t", p, q}) for p, q in pairs]
    c2 = [
        frozenset(pairs[i] + pairs[j])
        for i in range(r)
        for j in range(i + 1, r)
    ]
    forbidden = c1 + c2 + c3_members
    c4 = [
        frozenset(combo)
        for combo in combinations(labels, r + 1)
        if not any(f <= frozenset(combo) for f in forbidden)
    ]
    return Matroid.from_circuits(labels, c1 + c2 + c3_members + c4)


def is_circuit_hyperplane(m: Matroid, c: frozenset[str] | set[str]) -> bool:
    """True iff c is a circuit of m, has rank(E) - 1, and is closed."""
    c = frozenset(c)
    if c not in circuits(m):
        return False
    full = rank_of(m, m.ground)
    rc = rank_of(m, c)
    if rc != full - 1:
        return False
    for e in set(m.ground) - c:
        if rank_of(m, c | {e}) == rc:
            return False
    return True


def relax(m: Matroid, c: frozenset[str] | set[str]) -> Matroid:
    """Turn the circuit-hyperplane c into a basis.

    The relaxed matroid is recomputed from its basis family (the old
    bases plus c) by brute-force minimal-dependent-set enumeration, so
    this stays oracle-grade rather than relying on a circuit-rewriting
    shortcut.
    """
    c = frozenset(c)
    if not is_circuit_hyperplane(m, c):
        raise NotCircuitHyperplane(f"{sorted(c)} is not a circuit-hyperplane")
    ground = m.ground
    index = {lab: i for i, lab in enumerate(ground)}
    mask_of = lambda s: sum(1 << index[l] for l in s)
    full_rank = rank_of(m, ground)
    indep = independence_oracle(m)
    base_masks = [
        mask_of(combo)
        for combo in combinations(ground, full_rank)
        if indep(frozenset(combo))
    ]
    base_masks.append(mask_of(c))
    found: list[frozenset[str]] = []
    found_masks: list[int] = []
    for size in range(1, full_rank + 2):
        for combo in combinations(ground, size):
            s_mask = mask_of(combo)
            if any(fm & s_mask == fm for fm in found_masks):
                continue
            if not any(s_mask & bm == s_mask for bm in base_masks):
                found.append(frozenset(combo))
                found_masks.append(s_mask)
    return Matroid.from_circuits(ground, found)


def recognize_spike(m: Matroid) -> tuple[SpikeDescriptor, ...]:
    """All (tip, legs) decompositions exhibiting m as a spike.

    Empty when m is not a spike.  The binary rank-3 spike admits one
    decomposition per element; binary spikes of higher rank admit one.
    """
    n = len(m.ground)
    if n < 7 or n % 2 == 0:
        return ()
    r = (n - 1) // 2
    fam = circuits(m)
    sizes = set(fam.histogram())
    if not sizes <= {3, 4, r, r + 1}:
        return ()
    three = [c for c in fam if len(c) == 3]
    descriptors = []
    for tip in m.ground:
        legs3 = [c for c in three if tip in c]
        if len(legs3) != r:
            continue
        pairs = [c - {tip} for c in legs3]
        union = set()
        ok = True
        for p in pairs:
            if p & union:
                ok = False
                break
            union |= p
        if not ok or union != set(m.ground) - {tip}:
            continue
        c1 = {frozenset(c) for c in legs3}
        c2 = {frozenset(a | b) for a, b in combinations(pairs, 2)}
        if not c2 <= fam.members:
            continue
        transversals = set()
        ok = True
        for c in fam:
            if len(c) != r or c in c1 or c in c2:
                continue
            if any(len(c & p) != 1 for p in pairs):
                ok = False
                break
            transversals.add(c)
        if not ok:
            continue
        if any(
            len(a & b) > r - 2 for a, b in combinations(sorted(transversals, key=sorted), 2)
        ):
            continue
        forbidden = list(c1 | c2 | transversals)
        c4 = {
            frozenset(combo)
            for combo in combinations(m.ground, r + 1)
            if not any(f <= frozenset(combo) for f in forbidden)
        }
        if fam.members != c1 | c2 | transversals | c4:
            continue
        ordered_pairs = tuple(
            sorted(
                (tuple(sort_labels(p)) for p in pairs),
                key=lambda pq: label_key(pq[0]),
            )
        )
        descriptors.append(
            SpikeDescriptor(
                rank=r,
                tip=tip,
                legs=ordered_pairs,
                transversal_circuits=CircuitFamily.of(transversals),
            )
        )
    descriptors.sort(key=lambda d: label_key(d.tip))
    return tuple(descriptors)
