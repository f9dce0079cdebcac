"""Sparse polynomial contracts: substitution, gradients, squares, Hessians."""

import random
from fractions import Fraction

import pytest

from coblekit.algebra import MatrixQ
from coblekit.poly import (
    LinearParam,
    NotOnHypersurfaceError,
    SmoothPointError,
    SparsePoly,
    gradient,
    local_quadratic_part,
    perfect_square_root,
    proportional_polys,
    quadratic_rank,
    restrict,
)


def var(n, i):
    return SparsePoly.variable(n, i)


def power_sum(j, n=6):
    return sum((var(n, i) ** j for i in range(n)), SparsePoly.zero(n))


def igusa_quartic():
    return 4 * power_sum(4) - power_sum(2) ** 2


def the_line():
    # coordinates (t, t, u, u, -t-u, -t-u)
    return LinearParam.from_columns([[1, 1, 0, 0, -1, -1], [0, 0, 1, 1, -1, -1]])


def rand_poly(rng, nvars, max_terms=5, max_deg=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exp = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        terms[exp] = Fraction(rng.randint(-6, 6))
    return SparsePoly(nvars, terms)


def rand_param(rng, target, source):
    while True:
        m = MatrixQ(
            target, source, [Fraction(rng.randint(-3, 3)) for _ in range(target * source)]
        )
        if m.rank() == source:
            return LinearParam(m)


class TestEvaluate:
    def test_igusa_value_against_independent_summation(self):
        # oracle: plain Fraction arithmetic, no polynomial machinery
        point = [Fraction(1), Fraction(-1), 0, 0, 0, 0]
        s2 = sum(Fraction(x) ** 2 for x in point)
        s4 = sum(Fraction(x) ** 4 for x in point)
        assert 4 * s4 - s2 * s2 == 4
        assert igusa_quartic().evaluate(point) == 4

    def test_s1_on_its_zero_subspace(self):
        s1 = power_sum(1)
        assert s1.evaluate([1, 2, 3, -1, -2, -3]) == 0
        assert s1.evaluate([0, 0, 0, 0, 0, 0]) == 0

    def test_constant(self):
        assert SparsePoly.constant(3, 7).evaluate([9, -2, 5]) == 7

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            power_sum(1).evaluate([1, 2, 3])

    def test_random_against_per_monomial_sum(self):
        rng = random.Random(3)
        for _ in range(30):
            f = rand_poly(rng, 3)
            point = [Fraction(rng.randint(-4, 4)) for _ in range(3)]
            oracle = sum(
                (
                    c * point[0] ** e[0] * point[1] ** e[1] * point[2] ** e[2]
                    for e, c in f.terms.items()
                ),
                Fraction(0),
            )
            assert f.evaluate(point) == oracle


class TestGradient:
    def test_small_example(self):
        # x^2 + yz -> (2x, z, y)
        f = var(3, 0) ** 2 + var(3, 1) * var(3, 2)
        g = gradient(f)
        assert g[0] == 2 * var(3, 0)
        assert g[1] == var(3, 2)
        assert g[2] == var(3, 1)

    def test_constant(self):
        g = gradient(SparsePoly.constant(4, 5))
        assert all(p.is_zero() for p in g)

    def test_igusa_partial_hand_expansion(self):
        # d/dx1 (4 s4 - s2^2) = 16 x1^3 - 4 x1 s2, expanded by hand:
        expected = {(3, 0, 0, 0, 0, 0): Fraction(12)}
        for j in range(1, 6):
            exp = [1, 0, 0, 0, 0, 0]
            exp[j] = 2
            expected[tuple(exp)] = Fraction(-4)
        assert gradient(igusa_quartic())[0] == SparsePoly(6, expected)


class TestRestrict:
    def test_s1_vanishes_on_line(self):
        assert restrict(power_sum(1), the_line()).is_zero()

    def test_quartic_vanishes_on_line(self):
        assert restrict(igusa_quartic(), the_line()).is_zero()

    def test_coordinate_restricts_to_parameter(self):
        assert restrict(var(6, 0), the_line()) == var(2, 0)

    def test_multiplicativity_randomized(self):
        rng = random.Random(5)
        for _ in range(25):
            phi = rand_param(rng, 4, 2)
            f = rand_poly(rng, 4, max_deg=2)
            g = rand_poly(rng, 4, max_deg=2)
            assert restrict(f * g, phi) == restrict(f, phi) * restrict(g, phi)

    def test_chain_rule_randomized(self):
        rng = random.Random(9)
        for _ in range(20):
            phi = rand_param(rng, 4, 2)
            f = rand_poly(rng, 4, max_deg=2)
            lhs = gradient(restrict(f, phi))
            pulled = [restrict(p, phi) for p in gradient(f)]
            for j in range(2):
                rhs = sum(
                    (phi.matrix.entry(i, j) * pulled[i] for i in range(4)),
                    SparsePoly.zero(2),
                )
                assert lhs[j] == rhs

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            restrict(power_sum(1, 6), rand_param(random.Random(0), 4, 2))


class TestPerfectSquare:
    def test_simple_square(self):
        q = var(4, 0) ** 2 + var(4, 1) * var(4, 2)
        assert perfect_square_root(q * q) == q

    def test_not_a_square(self):
        assert perfect_square_root(var(4, 0) ** 4 + var(4, 1) ** 4) is None

    def test_negative_of_square(self):
        q = var(3, 0) ** 2 + var(3, 1) ** 2
        assert perfect_square_root(-1 * (q * q)) is None

    def test_zero(self):
        assert perfect_square_root(SparsePoly.zero(4)) == SparsePoly.zero(4)

    def test_non_homogeneous_rejected(self):
        with pytest.raises(ValueError):
            perfect_square_root(var(3, 0) ** 4 + var(3, 0))

    def test_roundtrip_randomized(self):
        rng = random.Random(21)
        for _ in range(30):
            terms = {}
            for _ in range(rng.randint(1, 4)):
                i, j = rng.randint(0, 3), rng.randint(0, 3)
                exp = [0, 0, 0, 0]
                exp[i] += 1
                exp[j] += 1
                terms[tuple(exp)] = Fraction(rng.randint(-4, 4))
            q = SparsePoly(4, terms)
            if q.is_zero():
                continue
            scale = Fraction(rng.randint(1, 5))
            root = perfect_square_root(q * q * scale)
            assert root is not None
            c = proportional_polys(root * root, q * q * scale)
            assert c is not None and c > 0
            lead = min(root.terms)
            assert root.terms[lead] == 1

    def test_perturbed_squares_rejected(self):
        rng = random.Random(33)
        for _ in range(20):
            q = var(4, 0) ** 2 + Fraction(rng.randint(1, 5)) * var(4, 1) * var(4, 3)
            bump_exp = (1, 1, 1, 1)
            bumped = q * q + SparsePoly(4, {bump_exp: Fraction(rng.randint(1, 3))})
            assert perfect_square_root(bumped) is None


class TestQuadraticRank:
    def test_examples(self):
        assert quadratic_rank(var(4, 0) * var(4, 1) + var(4, 2) * var(4, 3)) == 4
        assert quadratic_rank(var(4, 0) ** 2) == 1

    def test_wrong_degree(self):
        with pytest.raises(ValueError):
            quadratic_rank(var(3, 0) ** 3)

    def test_invariance_under_change_of_basis(self):
        rng = random.Random(29)
        q = var(4, 0) * var(4, 1) + var(4, 2) ** 2
        base_rank = quadratic_rank(q)
        for _ in range(10):
            while True:
                m = MatrixQ(
                    4, 4, [Fraction(rng.randint(-3, 3)) for _ in range(16)]
                )
                if m.rank() == 4:
                    break
            assert quadratic_rank(restrict(q, LinearParam(m))) == base_rank


class TestLocalQuadraticPart:
    def test_cone_point(self):
        # y^2 - x^2 - z^2 in P^3, singular at (0:0:0:1)
        f = var(4, 1) ** 2 - var(4, 0) ** 2 - var(4, 2) ** 2
        h = local_quadratic_part(f, [0, 0, 0, 1])
        assert h.rows == h.cols == 3
        assert h.rank() == 3
        assert h == h.transpose()

    def test_point_off_hypersurface(self):
        f = var(3, 0) ** 2 + var(3, 1) ** 2
        with pytest.raises(NotOnHypersurfaceError):
            local_quadratic_part(f, [1, 1, 1])

    def test_smooth_point_is_a_contract_violation(self):
        f = var(3, 0) ** 2 - var(3, 1) * var(3, 2)
        # (0:0:1) lies on the surface but the gradient does not vanish
        with pytest.raises(SmoothPointError):
            local_quadratic_part(f, [0, 0, 1])
