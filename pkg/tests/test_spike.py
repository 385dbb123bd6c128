"""Spike constructions, phi families, relaxation, recognition."""

import pytest

from spikes.errors import InvalidC3, NotCircuitHyperplane, RankTooSmall
from spikes.matroid import (
    circuits,
    circuits_bruteforce,
    independence_oracle,
    is_binary_by_symdiff,
    matroids_equal,
    Matroid,
    rank_of,
)
from spikes.gf2 import rank
from spikes.spike import (
    binary_spike,
    binary_spike_matrix,
    build_spike,
    circuit_count_formula,
    is_circuit_hyperplane,
    leg_pairs,
    phi_family,
    phi_union,
    recognize_spike,
    relax,
    spike_labels,
)


def test_matrix_shape_and_labels():
    m = binary_spike_matrix(3)
    assert (m.nrows, m.ncols) == (3, 7)
    assert m.col_labels == ("x1", "x2", "x3", "y1", "y2", "y3", "t")
    assert m.column("y1").to_string() == "011"
    assert m.column("t").to_string() == "111"


@pytest.mark.parametrize("r", range(3, 8))
def test_matrix_full_rank(r):
    assert rank(binary_spike_matrix(r)) == r


def test_rank_too_small():
    with pytest.raises(RankTooSmall):
        binary_spike_matrix(2)
    with pytest.raises(RankTooSmall):
        phi_family(2, 1)
    with pytest.raises(RankTooSmall):
        build_spike(2)


def test_phi1_is_the_legs():
    assert phi_family(3, 1).members == {
        frozenset({"t", "x1", "y1"}),
        frozenset({"t", "x2", "y2"}),
        frozenset({"t", "x3", "y3"}),
    }


@pytest.mark.parametrize("r", range(3, 8))
def test_phi_family_sizes(r):
    assert len(phi_family(r, 1)) == r
    assert len(phi_family(r, 2)) == r * (r - 1) // 2
    assert len(phi_family(r, 3)) == 2 ** (r - 1)
    assert len(phi_family(r, 4)) == 2 ** (r - 1)


def test_phi3_members_are_odd_transversals():
    for c in phi_family(5, 3):
        assert len(c) == 5
        assert len([l for l in c if l.startswith("y")]) % 2 == 1
        for p, q in leg_pairs(5):
            assert (p in c) != (q in c)


def test_phi4_example_member():
    assert frozenset({"x1", "y2", "y3", "t"}) in phi_family(3, 4)


def test_phi3_pairwise_intersection_bound():
    members = list(phi_family(4, 3))
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            assert len(a & b) <= 2


@pytest.mark.parametrize(
    "r,total", [(3, 14), (4, 26), (5, 47), (6, 85), (7, 156)]
)
def test_phi_union_counts(r, total):
    assert len(phi_union(r)) == circuit_count_formula(r) == total


def test_phi_union_equals_circuits_rank3():
    assert phi_union(3) == circuits(binary_spike(3))


def test_z5_has_exactly_ten_4_circuits():
    assert circuits(binary_spike(5)).histogram()[4] == 10


def test_build_free_spike_4():
    fs = build_spike(4)
    fam = circuits(fs)
    assert rank_of(fs, fs.ground) == 4
    assert len(fam) == 58
    assert fam.histogram() == {3: 4, 4: 6, 5: 48}
    assert fam == circuits_bruteforce(fs.ground, independence_oracle(fs))


def test_build_spike_with_phi3_is_binary_spike():
    assert matroids_equal(build_spike(3, phi_family(3, 3)), binary_spike(3))


def test_build_spike_rejects_bad_c3():
    with pytest.raises(InvalidC3):
        build_spike(4, [frozenset({"x1", "x2", "x3", "x4"}),
                        frozenset({"x1", "x2", "x3", "y4"})])
    with pytest.raises(InvalidC3):
        build_spike(3, [frozenset({"x1", "x2", "t"})])
    with pytest.raises(InvalidC3):
        build_spike(3, [frozenset({"x1", "x2"})])


def test_circuit_hyperplanes():
    z4 = binary_spike(4)
    transversal = next(iter(phi_family(4, 3)))
    assert is_circuit_hyperplane(z4, transversal)
    assert not is_circuit_hyperplane(z4, frozenset({"t", "x1", "y1"}))
    z3 = binary_spike(3)
    assert is_circuit_hyperplane(z3, frozenset({"t", "x1", "y1"}))
    assert not is_circuit_hyperplane(z3, frozenset({"x1", "y1", "x2", "y2"}))


def test_relax_requires_circuit_hyperplane():
    with pytest.raises(NotCircuitHyperplane):
        relax(binary_spike(4), frozenset({"t", "x1", "y1"}))


def test_relax_fano_line():
    z3 = binary_spike(3)
    line = next(iter(phi_family(3, 3)))
    m = relax(z3, line)
    fam = circuits(m)
    assert len(fam) == 17
    assert line not in fam
    assert not is_binary_by_symdiff(fam)
    assert recognize_spike(m)
    assert not matroids_equal(m, z3)


def test_relax_chain_rank3_reaches_free_spike():
    m = binary_spike(3)
    for c in phi_family(3, 3):
        m = relax(m, c)
    assert matroids_equal(m, build_spike(3))


def test_relax_keeps_spike_at_rank4():
    z4 = binary_spike(4)
    c = next(iter(phi_family(4, 3)))
    m = relax(z4, c)
    assert recognize_spike(m)
    # the relaxed circuit leaves, and C + e joins for each of the 5 outside elements
    assert len(circuits(m)) == len(circuits(z4)) - 1 + 5


def test_recognize_fano_has_seven_tips():
    descs = recognize_spike(binary_spike(3))
    assert len(descs) == 7
    assert {d.tip for d in descs} == set(spike_labels(3))


def test_recognize_z5_single_tip():
    descs = recognize_spike(binary_spike(5))
    assert len(descs) == 1
    d = descs[0]
    assert d.tip == "t" and d.rank == 5
    assert d.legs == leg_pairs(5)
    assert d.transversal_circuits == phi_family(5, 3)


def test_recognize_rejects_padded_u24():
    threes = [frozenset(c) for c in (("a", "b", "c"), ("a", "b", "d"),
                                     ("a", "c", "d"), ("b", "c", "d"))]
    m = Matroid.from_circuits(("a", "b", "c", "d", "e", "f", "g"), threes)
    assert recognize_spike(m) == ()


def test_recognize_free_spike_single_tip():
    descs = recognize_spike(build_spike(4))
    assert [d.tip for d in descs] == ["t"]
    assert len(descs[0].transversal_circuits) == 0
