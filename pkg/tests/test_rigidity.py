"""Lattice invariants, link arithmetic, and the admissible classification."""

import random
from fractions import Fraction

import pytest

from coblekit.groups import FiniteGroup, SignedPerm, closure, group_fingerprint
from coblekit.poly import SparsePoly
from coblekit.rigidity import (
    ClassificationDiscrepancyError,
    SarkisovLattice,
    alternating_a5,
    ambient_aut_x6,
    a5_times_galois,
    classify_admissible,
    d5_model,
    embedding_signature,
    f20_times_galois,
    invariant_rank,
    perm_image,
    s4_times_galois,
    sarkisov_arithmetic,
    signed_perm_matrix,
    standard_s5,
    twisted_s5,
)


class TestNamedGroups:
    def test_orders(self):
        assert ambient_aut_x6().order == 240
        assert standard_s5().order == 120
        assert twisted_s5().order == 120
        assert alternating_a5().order == 60
        assert a5_times_galois().order == 120
        assert s4_times_galois().order == 48
        assert f20_times_galois().order == 40

    def test_twisted_and_standard_are_isomorphic_but_embedded_differently(self):
        assert group_fingerprint(twisted_s5()) == group_fingerprint(standard_s5())
        assert embedding_signature(twisted_s5()) != embedding_signature(standard_s5())

    def test_twisted_elements_carry_their_sign(self):
        for g in twisted_s5():
            assert g.aux_sign == SignedPerm(g.images).parity()


class TestD5Model:
    def test_standard_generators_are_permutation_matrices(self):
        action = d5_model(standard_s5())
        for g in action.generators:
            assert all(s == 1 for s in g.signs)

    def test_deck_involution_is_minus_identity(self):
        deck = closure([SignedPerm(tuple(range(6)), aux_sign=-1)])
        action = d5_model(deck)
        mats = [signed_perm_matrix(g) for g in action.generators]
        minus_id = [[-(i == j) for j in range(5)] for i in range(5)]
        assert [m.row_lists() for m in mats] == [
            [[Fraction(x) for x in row] for row in minus_id]
        ]

    def test_twisted_transposition_is_minus_permutation(self):
        g = SignedPerm.from_cycles(6, [(1, 2)], aux_sign=-1)
        action = d5_model(closure([g]))
        m = signed_perm_matrix(action.generators[0])
        assert m.entry(0, 1) == -1 and m.entry(1, 0) == -1
        assert all(m.entry(i, i) == -1 for i in range(2, 5))

    def test_rejects_elements_moving_the_last_letter(self):
        with pytest.raises(ValueError):
            d5_model(closure([SignedPerm.from_cycles(6, [(5, 6)])]))


class TestInvariantRank:
    def test_five_named_ranks(self):
        assert invariant_rank(d5_model(alternating_a5())) == 1
        assert invariant_rank(d5_model(standard_s5())) == 1
        assert invariant_rank(d5_model(twisted_s5())) == 0
        assert invariant_rank(d5_model(a5_times_galois())) == 0
        assert invariant_rank(d5_model(ambient_aut_x6())) == 0

    def test_trivial_group(self):
        trivial = FiniteGroup([SignedPerm.identity_of(6)])
        assert invariant_rank(d5_model(trivial)) == 5

    def test_conjugation_invariance(self):
        rng = random.Random(43)
        ambient = ambient_aut_x6()
        for sub in (standard_s5(), twisted_s5(), alternating_a5()):
            base = invariant_rank(d5_model(sub))
            for _ in range(3):
                a = ambient.elements[rng.randrange(240)]
                conj = FiniteGroup([a * h * a.inverse() for h in sub])
                assert invariant_rank(d5_model(conj)) == base


class TestSarkisov:
    def test_symbolic_identities(self):
        rep = sarkisov_arithmetic(100)
        assert rep.c_identity and rep.d_identity
        assert rep.determinant_is_a_plus_2b
        assert rep.trilinear_is_2a2_minus_3b2

    def test_trilinear_numeric_values(self):
        lat = SarkisovLattice()
        h_prime = (Fraction(1), Fraction(0))  # (a, b) = (1, 0)
        assert lat.triple(h_prime, h_prime, lat.anticanonical) / 2 == 2
        zero = (Fraction(0), Fraction(0))
        assert lat.triple(zero, zero, lat.anticanonical) == 0

    def test_trilinear_symmetry(self):
        lat = SarkisovLattice()
        rng = random.Random(47)
        for _ in range(20):
            u, v, w = (
                (Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4)))
                for _ in range(3)
            )
            t = lat.triple(u, v, w)
            assert t == lat.triple(v, u, w) == lat.triple(w, v, u) == lat.triple(u, w, v)

    def test_reduction_polynomials(self):
        # substituting a = 1 - 2b (resp. a = -1 - 2b) into 2a^2 - 3b^2 - 2
        # gives b(5b - 8) (resp. b(5b + 8))
        rep = sarkisov_arithmetic(10)
        b = SparsePoly.variable(2, 1)
        assert rep.reduction_plus == b * (5 * b - 8)
        assert rep.reduction_minus == b * (5 * b + 8)

    def test_enumeration_at_full_bound(self):
        rep = sarkisov_arithmetic(10_000)
        assert rep.solutions == ((-1, 0), (1, 0))
        assert rep.positive_solutions == ((1, 0),)

    def test_bound_validation(self):
        with pytest.raises(ValueError):
            sarkisov_arithmetic(5)


@pytest.fixture(scope="module")
def verdicts():
    return classify_admissible()


class TestClassification:
    def test_exactly_three_admissible(self, verdicts):
        admissible = [v for v in verdicts if v.admissible]
        assert sorted(v.label for v in admissible) == [
            "A5 x C2",
            "S5 x C2",
            "twisted S5",
        ]
        assert sorted(v.order for v in admissible) == [120, 120, 240]

    def test_admissible_fingerprints(self, verdicts):
        by_label = {v.label: v for v in verdicts if v.admissible}
        assert by_label["S5 x C2"].fingerprint == group_fingerprint(ambient_aut_x6())
        assert by_label["twisted S5"].fingerprint == group_fingerprint(twisted_s5())
        assert by_label["A5 x C2"].fingerprint == group_fingerprint(a5_times_galois())

    def test_standard_s5_rejected_by_rank(self, verdicts):
        v = next(v for v in verdicts if v.label == "standard S5")
        assert not v.admissible
        assert v.d5_invariant_rank == 1

    def test_a5_rejected_by_rank(self, verdicts):
        v = next(v for v in verdicts if v.label == "A5")
        assert not v.admissible
        assert v.d5_invariant_rank == 1

    def test_small_subgroups_rejected(self, verdicts):
        for v in verdicts:
            if v.order <= 8:
                assert not v.admissible

    def test_subgroups_of_the_link_group_are_rejected(self, verdicts):
        for v in verdicts:
            if v.in_s4xc2:
                assert not v.admissible

    def test_every_class_has_one_recorded_reason_or_none(self, verdicts):
        for v in verdicts:
            assert v.admissible == (v.rejection is None)
            assert v.admissible == (
                v.d5_invariant_rank == 0
                and not v.in_s4xc2
                and not v.in_c5c4xc2
                and not v.excluded_by_signature
            )

    def test_stable_under_conjugated_representatives(self, verdicts):
        # replace a handful of class representatives by ambient conjugates
        # and re-run: the verdict multiset must not change
        from coblekit.groups import subgroups_up_to_conjugacy

        rng = random.Random(53)
        ambient = ambient_aut_x6()
        subs = subgroups_up_to_conjugacy(ambient)
        replaced = []
        for sub in subs:
            if sub.order in (12, 20, 24, 48, 120) and rng.random() < 0.5:
                a = ambient.elements[rng.randrange(240)]
                replaced.append(FiniteGroup([a * h * a.inverse() for h in sub]))
            else:
                replaced.append(sub)
        again = classify_admissible(replaced)
        key = lambda vs: sorted((v.order, v.admissible, v.rejection is None) for v in vs)
        assert key(again) == key(verdicts)

    def test_discrepancy_error_on_wrong_universe(self):
        # feeding only rejected classes must raise the structured error
        with pytest.raises(ClassificationDiscrepancyError):
            classify_admissible([standard_s5(), alternating_a5()])


class TestPermImage:
    def test_twisted_s5_image_is_full_s5(self):
        image = perm_image(twisted_s5())
        assert image.order == 120
        assert all(g.is_unsigned() for g in image)

    def test_deck_involution_image_is_trivial(self):
        deck = closure([SignedPerm(tuple(range(6)), aux_sign=-1)])
        assert perm_image(deck).order == 1
