"""Acceptance gate: one test per criterion, at the stated tolerances.

Each test prints a single [PASS]/[FAIL] line with its headline numbers
(run pytest with -s to watch them).  Set equalities are exact; time
budgets are the stated wall-clock ceilings.
"""

import time

import spikes.verify as verify
from spikes.cli import dump_payload, report_payload
from spikes.essplit import SplitSpec, es_split_matrix
from spikes.matroid import (
    circuits,
    cocircuits,
    is_binary_by_symdiff,
    matroids_equal,
)
from spikes.spike import (
    binary_spike,
    binary_spike_matrix,
    build_spike,
    circuit_count_formula,
    phi_family,
    phi_union,
    recognize_spike,
    spike_labels,
)
from spikes.verify import (
    check_lemma,
    check_parity,
    check_prop1_agreement,
    check_prop1_sampled,
    check_prop2,
    check_relaxation_chain,
    check_theorem5,
    enumerate_good_splits,
    run_suite,
    split_outcome_table,
)


class criterion:
    """Prints the [PASS]/[FAIL] line and enforces the time budget."""

    def __init__(self, name, budget=None):
        self.name = name
        self.budget = budget
        self.detail = ""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is not None:
            print(f"[FAIL] {self.name} ({elapsed:.1f}s)")
            return False
        over = self.budget is not None and elapsed > self.budget
        verdict = "FAIL" if over else "PASS"
        budget = f", budget {self.budget:.0f}s" if self.budget else ""
        print(f"[{verdict}] {self.name}: {self.detail} ({elapsed:.1f}s{budget})")
        assert not over, f"{self.name} exceeded its {self.budget}s budget"
        return False


def test_criterion_01_circuit_families_of_binary_spikes():
    expected_totals = {3: 14, 4: 26, 5: 47, 6: 85, 7: 156}
    with criterion("c1 binary-spike circuit families r=3..7", budget=10) as c:
        for r, total in expected_totals.items():
            fam = circuits(binary_spike(r))
            assert fam == phi_union(r)
            assert len(phi_family(r, 1)) == r
            assert len(phi_family(r, 2)) == r * (r - 1) // 2
            assert len(phi_family(r, 3)) == 2 ** (r - 1)
            assert len(phi_family(r, 4)) == 2 ** (r - 1)
            assert len(fam) == circuit_count_formula(r) == total
            rep = check_theorem5(r)
            assert rep.passed
        c.detail = "totals " + ", ".join(str(v) for v in expected_totals.values())


def test_criterion_02_split_dual_oracle():
    with criterion("c2 circuit/matrix split agreement", budget=120) as c:
        reps = [
            check_prop1_agreement(3),
            check_prop1_agreement(4),
            check_prop1_sampled(seed=0, count=500),
        ]
        assert all(rep.passed for rep in reps)
        cases = sum(rep.universe_size for rep in reps)
        c.detail = f"{cases} cases, zero disagreements"


def test_criterion_03_fano_split_census():
    with criterion("c3 rank-3 good splits", budget=60) as c:
        good = enumerate_good_splits(3)
        assert len(good) == 35
        assert len({s.x for s in good}) == 29
        everything = frozenset(spike_labels(3))
        lines = [m for m in circuits(binary_spike(3)) if len(m) == 3]
        predicted = {SplitSpec(everything, e) for e in everything}
        for line in lines:
            for z in everything - line:
                predicted.add(SplitSpec(line | {z}, z))
        assert good == frozenset(predicted)
        c.detail = "35 pairs, 29 distinct X"


def test_criterion_04_even_rank_characterization():
    with criterion("c4 rank-4 good splits are phi_4 x {t}", budget=300) as c:
        good = enumerate_good_splits(4)
        predicted = {SplitSpec(frozenset(m), "t") for m in phi_family(4, 4)}
        assert good == frozenset(predicted)
        assert len(good) == 8
        c.detail = "8 pairs, exact set equality"


def test_criterion_05_odd_rank_characterization():
    with criterion("c5 rank-5 good splits", budget=1800) as c:
        good = enumerate_good_splits(5)
        everything = frozenset(spike_labels(5))
        predicted = {
            SplitSpec(frozenset(m) | {"t"}, "t") for m in phi_family(5, 3)
        } | {SplitSpec(everything, "t")}
        assert good == frozenset(predicted)
        assert len(good) == 17
        _, _, tips = split_outcome_table(5)[(everything, "t")]
        assert "gamma" in tips
        c.detail = "17 pairs, full split has tip gamma"


def test_criterion_06_lemma_suite():
    with criterion("c6 no-go lemmas at r=4,5 plus instances") as c:
        for r in (4, 5):
            for lemma_id in (6, 7, 8, 10, 11):
                rep = check_lemma(lemma_id, r)
                assert rep.passed, f"lemma{lemma_id} r={r}: {rep.witnesses}"
        # the fully-even rank-4 instances keep exactly the fourteen old
        # 4-circuits, against ten in the next spike
        rep8 = check_lemma(8, 4)
        assert sum("14 of the old 4-circuits" in w for w in rep8.witnesses) == 2
        # X = {t} produces the 2-cocircuit {t, alpha}
        split = es_split_matrix(
            binary_spike_matrix(4), SplitSpec(frozenset({"t"}), "t")
        ).matroid
        assert frozenset({"t", "alpha"}) in cocircuits(split)
        c.detail = "lemmas 6,7,8,10,11 hold; both instances reproduced"


def test_criterion_07_split_3_connectivity():
    with criterion("c7 splits with an e-avoiding odd circuit stay 3-connected",
                   budget=300) as c:
        reps = [check_prop2(3), check_prop2(4)]
        assert all(rep.passed for rep in reps)
        c.detail = f"{sum(r.universe_size for r in reps)} cases, zero violations"


def test_criterion_08_relaxation_chains():
    with criterion("c8 relaxation chains end at the free spike") as c:
        for r in (3, 4):
            rep = check_relaxation_chain(r, seed=0)
            assert rep.passed, rep.witnesses
        # spot-check the endpoint equality directly
        m = binary_spike(4)
        from spikes.spike import relax

        for member in phi_family(4, 3):
            assert recognize_spike(m)
            m = relax(m, member)
        assert matroids_equal(m, build_spike(4))
        assert not is_binary_by_symdiff(circuits(m))
        c.detail = "r=3,4: spike at every step, binarity lost at step 1"


def test_criterion_09_intersection_parities():
    with criterion("c9 phi_3/phi_4 pairwise intersection parities r=3..6") as c:
        for r in (3, 4, 5, 6):
            rep = check_parity(r)
            assert rep.passed
        c.detail = "zero violations"


def test_criterion_10_report_determinism():
    with criterion("c10 byte-identical reports at 1 and 8 workers") as c:
        suites = ("thm5", "remark14", "relax")
        args = dict(max_rank=4, suites=suites, seed=0)
        verify._TABLE_CACHE.clear()
        reports8 = run_suite(jobs=8, **args)
        verify._TABLE_CACHE.clear()
        reports1 = run_suite(jobs=1, **args)
        bytes1 = dump_payload(report_payload(reports1, suites, 4, 0)).encode()
        bytes8 = dump_payload(report_payload(reports8, suites, 4, 0)).encode()
        assert bytes1 == bytes8
        assert all(rep.passed for rep in reports1)
        c.detail = f"{len(bytes1)} identical report bytes"
