import itertools
from fractions import Fraction

import pytest

from hyphodge import (
    INFINITY,
    ZERO,
    ConvolutionContext,
    HypergeometricParams,
    PeelCase,
    ReducibleInput,
    base_profile,
    choose_peel,
    conjugate_table,
    convolve_degrees,
    frac,
    hodge_numbers,
    profile_recursive,
    shift_residues,
    special_exponent,
    twist_degrees,
    unit_rep,
    verify_cross_engine,
)
from conftest import random_irreducible, residue_grid

F = Fraction


def rank_one_degree_oracle(a: Fraction, b: Fraction) -> Fraction:
    """Sum the three local exponents of the explicit rank-one connection.

    The natural extension of a rank-one connection on the projective line
    has degree minus the sum of its local exponents taken in [0, 1); the sum
    is an integer because the exponents add to zero mod 1.
    """
    exponents = [frac(a), frac(-b), frac(b - a)]
    total = sum(exponents, Fraction(0))
    assert total.denominator == 1
    return -total


class TestBaseProfile:
    def test_tables(self):
        prof = base_profile(F(1, 3), F(0))
        assert prof.nearby_zero.entries == {(F(1, 3), 0, 1): 1}
        assert prof.nearby_infinity.entries == {(F(0), 0, 1): 1}
        assert prof.vanishing_finite[0].entries == {(F(2, 3), 0, 0): 1}
        assert prof.hodge == {1: 1}

    @pytest.mark.parametrize(
        "a,b,expected",
        [(F(0), F(1, 2), -1), (F(1, 2), F(1, 4), -2), (F(1, 3), F(0), -1)],
    )
    def test_degree_against_exponent_sum(self, a, b, expected):
        prof = base_profile(a, b)
        assert prof.degrees == {1: expected}
        assert rank_one_degree_oracle(a, b) == expected

    def test_degree_oracle_exhaustive(self):
        for a in residue_grid(8):
            for b in residue_grid(8):
                if a == b:
                    continue
                assert base_profile(a, b).degrees == {
                    1: rank_one_degree_oracle(a, b)
                }

    def test_rejects_equal_exponents(self):
        with pytest.raises(ReducibleInput):
            base_profile(F(1, 3), F(1, 3))


class TestChoosePeel:
    def test_same_class_with_multiplicity(self):
        p = HypergeometricParams((F(0), F(0)), (F(1, 2), F(1, 2)))
        plan = choose_peel(p, (INFINITY, F(1, 2)))
        assert (plan.index, plan.case) == (0, PeelCase.CASE2)

    def test_retarget_when_multiplicity_one(self):
        p = HypergeometricParams((F(0), F(1, 2)), (F(1, 4), F(3, 4)))
        plan = choose_peel(p, (ZERO, F(0)))
        assert (plan.index, plan.case) == (1, PeelCase.CASE3)

    def test_different_class(self):
        p = HypergeometricParams((F(0), F(1, 2)), (F(1, 4), F(3, 4)))
        plan = choose_peel(p, (ZERO, F(1, 2)))
        assert (plan.index, plan.case) == (0, PeelCase.CASE1)

    def test_kernel_rep(self):
        p = HypergeometricParams((F(0), F(1, 2)), (F(1, 4), F(3, 4)))
        plan = choose_peel(p, (ZERO, F(1, 2)))
        assert plan.kernel_rep == F(1, 4)


class TestProfileRecursive:
    def test_rank_one_is_base(self):
        p = HypergeometricParams((F(1, 3),), (F(0),))
        assert profile_recursive(p) == base_profile(F(1, 3), F(0))

    def test_legendre_matches_closed(self):
        p = HypergeometricParams((F(0), F(0)), (F(1, 2), F(1, 2)))
        rep = verify_cross_engine(p)
        assert rep.agree and rep.shift == 0

    def test_interlaced_matches_closed(self):
        p = HypergeometricParams((F(0), F(1, 2)), (F(1, 4), F(3, 4)))
        rep = verify_cross_engine(p)
        assert rep.agree and rep.shift == 0

    def test_memoized_calls_are_stable(self):
        p = HypergeometricParams((F(0), F(1, 5)), (F(1, 2), F(7, 8)))
        assert profile_recursive(p) == profile_recursive(p)

    def test_rejects_reducible(self):
        with pytest.raises(ReducibleInput):
            profile_recursive(HypergeometricParams((F(0),), (F(0),)))

    def test_reducible_reported_not_raised(self):
        rep = verify_cross_engine(HypergeometricParams((F(0),), (F(0),)))
        assert rep.error is not None and not rep.agree


class TestDegrees:
    def test_integrality_and_global_sum(self, rng):
        # The graded degrees must sum to the degree of the full natural
        # extension: minus the sum of all local exponents taken in [0, 1).
        for _ in range(120):
            p = random_irreducible(rng, rng.randint(1, 4), 8)
            prof = profile_recursive(p)
            assert prof.degrees is not None
            total = sum(prof.degrees.values())
            exponent_sum = (
                sum(p.alpha, Fraction(0))
                + sum((frac(-b) for b in p.beta), Fraction(0))
                + frac(special_exponent(p))
            )
            assert total == -exponent_sum, p

    def test_permutation_invariance(self, rng):
        for _ in range(60):
            p = random_irreducible(rng, rng.randint(2, 4), 6)
            degrees = profile_recursive(p).degrees
            order = list(range(p.n))
            rng.shuffle(order)
            assert profile_recursive(p.permuted(order)).degrees == degrees

    def test_unitary_concentration(self):
        # With the fibre concentrated in one index, the degrees must be too.
        p = HypergeometricParams((F(0), F(1, 2)), (F(1, 4), F(3, 4)))
        prof = profile_recursive(p)
        assert set(prof.degrees) <= set(prof.hodge)
        assert prof.degrees == {2: -2}

    def test_frozen_worked_examples(self):
        legendre = profile_recursive(
            HypergeometricParams((F(0), F(0)), (F(1, 2), F(1, 2)))
        )
        assert legendre.degrees == {1: -1}

    def test_peel_choice_does_not_matter(self, rng):
        # Recompute the degrees peeling each factor first; the transport
        # formulas must give the same answer along every route.
        from hyphodge.recursion import _degrees, _nearby_infinity, _nearby_zero
        from hyphodge.recursion import _peeled_shifted, _vanishing_fiber

        for _ in range(40):
            p = random_irreducible(rng, rng.randint(2, 3), 6)
            pairs = tuple(sorted(p.pairs()))
            expected = dict(_degrees(pairs))
            for j in range(len(pairs)):
                aj, bj = pairs[j]
                ctx = ConvolutionContext(unit_rep(frac(bj - aj)))
                sub = _peeled_shifted(pairs, j)
                delta_q = convolve_degrees(
                    dict(_degrees(sub)),
                    _nearby_zero(sub),
                    (_vanishing_fiber(sub),),
                    ctx,
                )
                if aj == 0:
                    got = delta_q
                else:
                    nz = shift_residues(_nearby_zero(pairs), aj)
                    ni = conjugate_table(shift_residues(_nearby_infinity(pairs), aj))
                    got = twist_degrees(
                        delta_q, hodge_numbers(nz), nz, ni, ConvolutionContext(frac(-aj))
                    )
                assert got == expected, (p, j)


class TestCrossEngine:
    @pytest.mark.parametrize("n", [2, 3])
    def test_exhaustive_small(self, n):
        grid = residue_grid(3)
        for a in itertools.product(grid, repeat=n):
            for b in itertools.product(grid, repeat=n):
                if set(a) & set(b):
                    continue
                rep = verify_cross_engine(HypergeometricParams(a, b))
                assert rep.agree and rep.shift == 0 and rep.identities_ok, (a, b)

    def test_random_medium(self, rng):
        for _ in range(120):
            p = random_irreducible(rng, rng.randint(1, 4), 8)
            rep = verify_cross_engine(p)
            assert rep.agree and rep.shift == 0, p

    def test_transvections(self, rng):
        # Inputs whose drops sum to an integer exercise the unipotent
        # regrade of the vanishing entry.
        found = 0
        grid = residue_grid(6)
        for a in itertools.product(grid, repeat=3):
            if found >= 40:
                break
            total = frac(sum(a, Fraction(0)))
            b = tuple(frac(x + Fraction(1, 3)) for x in a)
            p = HypergeometricParams(a, b)
            if not p.is_irreducible or special_exponent(p) != 1:
                continue
            found += 1
            rep = verify_cross_engine(p)
            assert rep.agree and rep.shift == 0, p
        assert found > 0


class TestRecursionInternals:
    def test_vanishing_pipeline_matches_closed_grading(self):
        # The pipeline grading sits one below the profile grading exactly on
        # the unipotent class.
        from hyphodge.recursion import _vanishing_final, _vanishing_raw

        p = HypergeometricParams((F(0), F(0)), (F(1, 2), F(1, 2)))
        pairs = tuple(sorted(p.pairs()))
        raw = _vanishing_raw(pairs)
        final = _vanishing_final(pairs)
        assert raw.entries == {(F(0), 0, 1): 1}
        assert final.entries == {(F(0), 0, 2): 1}

    def test_depth_is_rank(self):
        # Each peel removes one factor, so a rank-n input never recurses
        # past depth n; just exercise a rank-5 input.
        p = HypergeometricParams(
            (F(0), F(1, 5), F(2, 5), F(3, 5), F(4, 5)),
            (F(1, 10), F(3, 10), F(7, 10), F(9, 10), F(1, 2)),
        )
        prof = profile_recursive(p)
        assert prof.rank == 5
        assert sum(prof.hodge.values()) == 5
