"""Incidence configuration and its automorphism group."""

import random
from itertools import combinations

import pytest

from coblekit.configuration import (
    ConfigAut,
    Incidence,
    PairPartition,
    TriplePartition,
    build_incidence,
    configuration_automorphisms,
    induced_from_s6,
    line_param,
    pairwise_plane_intersections,
)
from coblekit.groups import SignedPerm, symmetric_group
from coblekit.poly import SparsePoly, restrict


@pytest.fixture(scope="module")
def inc() -> Incidence:
    return build_incidence()


@pytest.fixture(scope="module")
def auts(inc):
    return configuration_automorphisms(inc)


def test_partition_counts():
    assert len(PairPartition.all()) == 15
    assert len(TriplePartition.all()) == 10
    assert len({str(a) for a in PairPartition.all()}) == 15
    assert len({str(b) for b in TriplePartition.all()}) == 10


def test_partition_validation():
    with pytest.raises(ValueError):
        PairPartition([(1, 2), (2, 3), (4, 5)])
    with pytest.raises(ValueError):
        TriplePartition([(1, 2, 3), (3, 4, 5)])


def test_serialization():
    assert str(PairPartition([(3, 4), (1, 2), (5, 6)])) == "12|34|56"
    assert str(TriplePartition([(4, 5, 6), (1, 2, 3)])) == "123|456"


def test_incidence_hand_examples(inc):
    a = PairPartition([(1, 2), (3, 4), (5, 6)])
    # on the line (t, t, u, u, -t-u, -t-u): x1 + x3 + x5 = t + u - t - u = 0
    assert inc.incident(a, TriplePartition([(1, 3, 5), (2, 4, 6)]))
    # x1 + x2 + x3 = 2t + u is not identically zero
    assert not inc.incident(a, TriplePartition([(1, 2, 3), (4, 5, 6)]))


def test_incidence_sums(inc):
    assert all(sum(row) == 4 for row in inc.matrix)
    for j in range(10):
        assert sum(inc.matrix[i][j] for i in range(15)) == 6


def test_geometric_equals_combinatorial_on_all_pairs(inc):
    for alpha in inc.lines:
        param = line_param(alpha)
        for beta in inc.planes:
            geometric = restrict(SparsePoly.linear_form(beta.form()), param).is_zero()
            combinatorial = all(
                len(set(p) & set(t)) == 1 for p in alpha.pairs for t in beta.triples
            )
            assert geometric == combinatorial == inc.incident(alpha, beta)


def test_pairwise_plane_intersections(inc):
    pw = pairwise_plane_intersections(inc)
    assert len(pw) == 45
    assert set(pw.values()) == {2}
    b1 = TriplePartition([(1, 2, 3), (4, 5, 6)])
    b2 = TriplePartition([(1, 3, 5), (2, 4, 6)])
    assert pw.get((b1, b2), pw.get((b2, b1))) == 2
    # double counting oracle: 15 lines, each on C(4, 2) hyperplane pairs
    assert sum(pw.values()) == 15 * 6


def test_automorphism_group_order(auts):
    assert auts.order == 720


def test_automorphisms_equal_relabeling_image(inc, auts):
    induced = {induced_from_s6(sigma, inc) for sigma in symmetric_group(6)}
    assert len(induced) == 720  # faithful
    assert induced == set(auts.elements)


def test_induced_is_a_homomorphism(inc):
    rng = random.Random(19)
    s6 = symmetric_group(6)
    for _ in range(25):
        a = s6.elements[rng.randrange(720)]
        b = s6.elements[rng.randrange(720)]
        assert induced_from_s6(a, inc) * induced_from_s6(b, inc) == induced_from_s6(
            a * b, inc
        )


def test_induced_identity_and_transposition(inc):
    ident = induced_from_s6(SignedPerm.identity_of(6), inc)
    assert ident == ident.identity()
    swap = induced_from_s6(SignedPerm.from_cycles(6, [(1, 2)]), inc)
    fixed = PairPartition([(1, 2), (3, 4), (5, 6)])
    moved = PairPartition([(1, 3), (2, 4), (5, 6)])
    target = PairPartition([(2, 3), (1, 4), (5, 6)])
    assert swap.line_map[inc.lines.index(fixed)] == inc.lines.index(fixed)
    assert swap.line_map[inc.lines.index(moved)] == inc.lines.index(target)


def test_induced_rejects_signed(inc):
    with pytest.raises(ValueError):
        induced_from_s6(SignedPerm((1, 0, 2, 3, 4, 5), (1, -1, 1, 1, 1, 1)), inc)


def test_group_acts_transitively_on_lines(auts):
    orbit = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in auts.generators:
            y = g.line_map[x]
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    assert orbit == set(range(15))


def test_every_automorphism_preserves_incidence_and_pair_counts(inc, auts):
    pw = {}
    for j1, j2 in combinations(range(10), 2):
        pw[(j1, j2)] = sum(1 for i in range(15) if inc.matrix[i][j1] and inc.matrix[i][j2])
    rng = random.Random(31)
    sample = [auts.elements[rng.randrange(720)] for _ in range(30)]
    for g in sample:
        assert g.preserves(inc)
        for j1, j2 in combinations(range(10), 2):
            i1, i2 = g.plane_map[j1], g.plane_map[j2]
            key = (i1, i2) if i1 < i2 else (i2, i1)
            assert pw[key] == pw[(j1, j2)]


def test_configaut_group_axioms(auts):
    rng = random.Random(37)
    for _ in range(20):
        a = auts.elements[rng.randrange(720)]
        b = auts.elements[rng.randrange(720)]
        assert a * b in auts
        assert a.inverse() in auts
        assert a * a.inverse() == a.identity()
