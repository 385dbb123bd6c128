"""The es-splitting operation, at matrix level and at circuit level.

Matrix level: given a GF(2) representation A and a pair (X, e) with
e in X, append one row equal to the indicator of X, then two columns:
alpha, the unit vector of the new row, and gamma, the sum of alpha and
the (extended) column of e.  The new row is therefore 1 exactly on
X union {alpha}, and gamma repeats the old column of e with a 0 in the
new row.  The split matroid gains two elements, its rank grows by one,
and {e, alpha, gamma} is always a circuit, written Lambda below.

Circuit level: the split matroid's circuits are assembled directly from
the original family, with each original circuit transformed according to
the parity of its intersection with X (OX = odd, EX = even) and whether
it contains e.  Disjoint pairs of OX-circuits contribute union candidates;
the assembled collection is reduced to its minimal members, which is
exactly the circuit family of the matrix-level split.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import (
    ElementNotInX,
    LoopElement,
    MemoryBudget,
    NotBinary,
    ParityMismatch,
    ReservedLabel,
    UnknownLabel,
)
from .gf2 import GF2Matrix
from .matroid import (
    CircuitFamily,
    Matroid,
    VectorRep,
    is_binary_by_symdiff,
    sort_labels,
)
from .spike import phi_family, spike_labels

OX = "OX"
EX = "EX"

_ALPHA = "alpha"
_GAMMA = "gamma"

#: Split variants that land on the binary spike of the next rank.
EVEN = "even"
ODD_X_PHI3 = "odd-xphi3"
ODD_X_IS_E = "odd-xise"
VARIANTS = (EVEN, ODD_X_PHI3, ODD_X_IS_E)


@dataclass(frozen=True)
class SplitSpec:
    """The pair (X, e) parameterizing a split; e must lie in X."""

    x: frozenset[str]
    e: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", frozenset(self.x))
        if self.e not in self.x:
            raise ElementNotInX(f"{self.e!r} is not in X")


@dataclass(frozen=True)
class SplitResult:
    """Split matroid on E union {alpha, gamma} plus its tracking data."""

    matroid: Matroid
    lambda_circuit: frozenset[str]
    provenance: SplitSpec


def classify_circuit(circuit, x_set) -> str:
    """OX when the circuit meets X in an odd number of elements, else EX."""
    return OX if len(frozenset(circuit) & frozenset(x_set)) % 2 else EX


def es_split_matrix(a: GF2Matrix, spec: SplitSpec) -> SplitResult:
    """Matrix-level split of the vector matroid of ``a``."""
    labels = set(a.col_labels)
    if _ALPHA in labels or _GAMMA in labels:
        raise ReservedLabel("matrix already carries an alpha or gamma column")
    stray = spec.x - labels
    if stray:
        raise UnknownLabel(f"X contains unknown labels: {sorted(stray)}")
    e_idx = a.col_index(spec.e)
    if a.column(spec.e).is_zero():
        raise LoopElement(f"{spec.e!r} is a loop; the split is degenerate")
    c = a.ncols
    alpha_pos, gamma_pos = c, c + 1
    new_rows = []
    for r in a.rows:
        new_rows.append(r | ((r >> e_idx & 1) << gamma_pos))
    x_bits = 0
    for lab in spec.x:
        x_bits |= 1 << a.col_index(lab)
    new_rows.append(x_bits | (1 << alpha_pos))
    matrix = GF2Matrix(tuple(new_rows), a.col_labels + (_ALPHA, _GAMMA))
    return SplitResult(
        matroid=Matroid.from_matrix(matrix),
        lambda_circuit=frozenset({spec.e, _ALPHA, _GAMMA}),
        provenance=spec,
    )


def _split_input_checks(c: CircuitFamily, spec: SplitSpec) -> None:
    labels = set(c.labels())
    if _ALPHA in labels or _GAMMA in labels:
        raise ReservedLabel("family already mentions alpha or gamma")
    if frozenset({spec.e}) in c:
        raise LoopElement(f"{spec.e!r} is a loop; the split is degenerate")
    if not is_binary_by_symdiff(c):
        raise NotBinary("the circuit-level split needs a binary matroid")


def es_split_circuits(c: CircuitFamily, spec: SplitSpec) -> CircuitFamily:
    """Circuit-level split of a binary matroid given by its circuits.

    The transformation rules send an original circuit C to C itself when
    |C & X| is even, to C + alpha when odd, to (C - e) + gamma or
    C + {e, gamma} on the gamma side, and to (C - e) + {alpha, gamma}
    for even circuits through e; {e, alpha, gamma} always joins.  Taken
    literally over single circuits (plus disjoint OX pairs) these rules
    can miss circuits when disjoint unions of original circuits interleave
    the two parities, so the assembly here closes over the whole cycle
    space spanned by the family and keeps the minimal members.  The result
    agrees with the matrix-level split on every binary input; the literal
    single-circuit reading stays available as ``prop1_assembly``.
    """
    _split_input_checks(c, spec)
    members = list(c)
    universe = sort_labels(set(c.labels()) | {spec.e})
    index = {lab: i for i, lab in enumerate(universe)}
    apos, gpos = len(universe), len(universe) + 1
    basis: dict[int, int] = {}
    for m in members:
        v = 0
        for lab in m:
            v |= 1 << index[lab]
        while v:
            h = v.bit_length() - 1
            if h in basis:
                v ^= basis[h]
            else:
                basis[h] = v
                break
    if len(basis) > 20:
        raise MemoryBudget(f"cycle space has 2**{len(basis)} members")
    span = [0]
    for b in basis.values():
        span.extend(s ^ b for s in list(span))
    xmask = 0
    for lab in spec.x:
        if lab in index:
            xmask |= 1 << index[lab]
    ebit = 1 << index[spec.e]
    out = []
    for s in span:
        if s:
            # supports summing to zero: stay in E, or gain alpha when odd on X
            if (s & xmask).bit_count() & 1:
                out.append(s | 1 << apos)
            else:
                out.append(s)
        d = s ^ ebit
        # supports summing to the column of e: gain gamma, and alpha when odd
        if (d & xmask).bit_count() & 1:
            out.append(d | 1 << apos | 1 << gpos)
        else:
            out.append(d | 1 << gpos)
    out.sort(key=lambda v: (v.bit_count(), v))
    minimal: list[int] = []
    for v in out:
        if not any(m & v == m for m in minimal):
            minimal.append(v)
    full = universe + (_ALPHA, _GAMMA)
    return CircuitFamily.of(
        frozenset(full[i] for i in range(len(full)) if v >> i & 1) for v in minimal
    )


def prop1_assembly(
    c: CircuitFamily, spec: SplitSpec, c5_scope: str = "family"
) -> CircuitFamily:
    """The literal single-circuit reading of the split transformation.

    Assembles Lambda and the rule images C0..C4 of individual circuits,
    plus the minimal disjoint OX-pair unions (C5).  ``c5_scope`` fixes how
    far that minimality reaches: "family" reduces the whole collection to
    its minimal members, "candidates" only discards pair unions containing
    another assembled member or pair union.  The narrow reading can fail
    to be an antichain, in which case construction raises
    InvalidCircuitFamily.  On binary spikes the family reading equals
    ``es_split_circuits``; on general binary matroids it may miss circuits
    arising from longer disjoint unions.
    """
    if c5_scope not in ("family", "candidates"):
        raise ValueError(f"unknown c5_scope {c5_scope!r}")
    _split_input_checks(c, spec)
    e = spec.e
    lam = frozenset({e, _ALPHA, _GAMMA})
    ox = [m for m in c if classify_circuit(m, spec.x) == OX]
    ex = [m for m in c if classify_circuit(m, spec.x) == EX]
    assembled: set[frozenset[str]] = {lam}
    assembled.update(ex)  # C0
    assembled.update(m | {_ALPHA} for m in ox)  # C1
    assembled.update(m | {e, _GAMMA} for m in ox if e not in m)  # C2
    assembled.update((m - {e}) | {_GAMMA} for m in ox if e in m)  # C3
    assembled.update((m - {e}) | {_ALPHA, _GAMMA} for m in ex if e in m)  # C4
    candidates = {a | b for a, b in combinations(ox, 2) if not a & b}
    if c5_scope == "candidates":
        kept = _minimal_sets(candidates, against=assembled)
        return CircuitFamily.of(assembled | kept)
    return CircuitFamily.of(_minimal_sets(assembled | candidates))


def _minimal_sets(
    sets: set[frozenset[str]], against: set[frozenset[str]] | None = None
) -> set[frozenset[str]]:
    """Members of ``sets`` containing no other member of sets (or of
    ``against``) as a proper subset."""
    pool = sorted(sets | (against or set()), key=len)
    index: dict[str, int] = {}
    for s in pool:
        for lab in s:
            index.setdefault(lab, len(index))
    mask_of = {s: sum(1 << index[l] for l in s) for s in pool}
    kept: set[frozenset[str]] = set()
    for s in sorted(sets, key=len):
        sm = mask_of[s]
        ok = True
        for other in pool:
            if len(other) >= len(s):
                break
            om = mask_of[other]
            if om & sm == om:
                ok = False
                break
        if ok:
            kept.add(s)
    return kept


def es_split(m: Matroid, spec: SplitSpec) -> SplitResult:
    """Split a matroid using whichever representation it carries."""
    if isinstance(m.rep, VectorRep):
        return es_split_matrix(m.rep.matrix, spec)
    family = es_split_circuits(m.rep.family, spec)
    ground = sort_labels(set(m.ground) | {_ALPHA, _GAMMA})
    return SplitResult(
        matroid=Matroid.from_circuits(ground, family, validate=False),
        lambda_circuit=frozenset({spec.e, _ALPHA, _GAMMA}),
        provenance=spec,
    )


def _require_parity(r: int, variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if variant == EVEN and r % 2:
        raise ParityMismatch(f"variant {variant!r} needs even rank, got {r}")
    if variant != EVEN and r % 2 == 0:
        raise ParityMismatch(f"variant {variant!r} needs odd rank, got {r}")


def psi_family(r: int, variant: str, k: int) -> CircuitFamily:
    """Circuit families of the split spike on E union {alpha, gamma}.

    For the even variant (X a phi_4 member, e = t) and the odd transversal
    variant (X = C union t with C in phi_3, e = t):

        psi_1 = legs union {Lambda}
        psi_2 = phi_2 union {(L_i - t) union {alpha, gamma}}
        psi_3 = {C+alpha : C in phi_3} union {(C-t)+gamma : C in phi_4}
        psi_4 = {C+{t,gamma} : C in phi_3} union {C+alpha : C in phi_4}

    For the odd full-split variant (X = E, e = t), where gamma ends up as
    the tip:

        psi_1 = {(L_i - t) union {gamma}} union {Lambda}
        psi_2 = phi_2 union {L_i union {alpha}}
        psi_3 = {C+alpha : C in phi_3} union phi_4
        psi_4 = {C+{t,gamma} : C in phi_3} union {(C-t)+{alpha,gamma} : C in phi_4}
    """
    _require_parity(r, variant)
    if k not in (1, 2, 3, 4):
        raise ValueError(f"k must be 1..4, got {k}")
    lam = frozenset({"t", _ALPHA, _GAMMA})
    legs = list(phi_family(r, 1))
    p2 = list(phi_family(r, 2))
    p3 = list(phi_family(r, 3))
    p4 = list(phi_family(r, 4))
    if variant in (EVEN, ODD_X_PHI3):
        if k == 1:
            return CircuitFamily.of(legs + [lam])
        if k == 2:
            return CircuitFamily.of(
                p2 + [(l - {"t"}) | {_ALPHA, _GAMMA} for l in legs]
            )
        if k == 3:
            return CircuitFamily.of(
                [m | {_ALPHA} for m in p3] + [(m - {"t"}) | {_GAMMA} for m in p4]
            )
        return CircuitFamily.of(
            [m | {"t", _GAMMA} for m in p3] + [m | {_ALPHA} for m in p4]
        )
    if k == 1:
        return CircuitFamily.of([(l - {"t"}) | {_GAMMA} for l in legs] + [lam])
    if k == 2:
        return CircuitFamily.of(p2 + [l | {_ALPHA} for l in legs])
    if k == 3:
        return CircuitFamily.of([m | {_ALPHA} for m in p3] + p4)
    return CircuitFamily.of(
        [m | {"t", _GAMMA} for m in p3]
        + [(m - {"t"}) | {_ALPHA, _GAMMA} for m in p4]
    )


def relabel_matroid(m: Matroid, mapping: dict[str, str]) -> Matroid:
    """Apply a label bijection; missing keys map to themselves."""
    full = {lab: mapping.get(lab, lab) for lab in m.ground}
    if len(set(full.values())) != len(full):
        raise UnknownLabel("relabeling is not a bijection on the ground set")
    if isinstance(m.rep, VectorRep):
        return Matroid.from_matrix(m.rep.matrix.relabel(full))
    family = CircuitFamily.of(
        frozenset(full[l] for l in c) for c in m.rep.family
    )
    return Matroid.from_circuits(
        [full[l] for l in m.ground], family, validate=False
    )


def relabel_to_spike(m: Matroid, variant: str) -> Matroid:
    """Rename a split spike so it compares directly with the next binary spike.

    Even and odd transversal variants: alpha and gamma become x_(r+1) and
    y_(r+1).  Odd full-split variant: alpha and t become x_(r+1) and
    y_(r+1) while gamma becomes the tip.
    """
    ground = set(m.ground)
    if _ALPHA not in ground or _GAMMA not in ground:
        raise UnknownLabel("ground set does not carry alpha and gamma")
    r = (len(ground) - 3) // 2
    if ground != set(spike_labels(r)) | {_ALPHA, _GAMMA}:
        raise UnknownLabel("ground set is not a split of x1..xr, y1..yr, t")
    _require_parity(r, variant)
    if variant in (EVEN, ODD_X_PHI3):
        mapping = {_ALPHA: f"x{r + 1}", _GAMMA: f"y{r + 1}"}
    else:
        mapping = {_ALPHA: f"x{r + 1}", "t": f"y{r + 1}", _GAMMA: "t"}
    return relabel_matroid(m, mapping)
