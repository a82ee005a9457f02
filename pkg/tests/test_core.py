from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyphodge import (
    AT_ONE,
    INFINITY,
    ZERO,
    HodgeProfile,
    HypergeometricParams,
    LocalHodgeTable,
    ReducibleInput,
    SingularPoint,
    TableKind,
    UnknownData,
    equal_up_to_shift,
    format_rational,
    frac,
    multiplicity_and_level,
    parse_rational,
    primitive_and_coprimitive,
    table_shift,
    total_from_primitive,
    unit_rep,
)

F = Fraction

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=24)


def nearby(entries, unknown=(), point=ZERO):
    return LocalHodgeTable(point, TableKind.NEARBY, entries, frozenset(unknown))


class TestFrac:
    def test_subtracts_integer_part(self):
        assert frac(F(5, 4)) == F(1, 4)

    def test_negative(self):
        assert frac(F(-1, 3)) == F(2, 3)

    def test_zero(self):
        assert frac(0) == 0

    @given(rationals)
    def test_idempotent(self, x):
        assert frac(frac(x)) == frac(x)

    @given(rationals)
    def test_range(self, x):
        assert 0 <= frac(x) < 1


class TestUnitRep:
    def test_zero_maps_to_one(self):
        assert unit_rep(F(0)) == 1

    def test_identity_inside(self):
        assert unit_rep(F(1, 2)) == F(1, 2)
        assert unit_rep(F(3, 4)) == F(3, 4)

    @given(rationals)
    def test_round_trip(self, x):
        r = frac(x)
        assert frac(unit_rep(r)) == r
        g = unit_rep(x)
        assert unit_rep(frac(g)) == g


class TestRationalFormat:
    @pytest.mark.parametrize(
        "text,value",
        [
            ("1/2", F(1, 2)),
            ("-1/3", F(-1, 3)),
            ("−1/3", F(-1, 3)),
            ("7", F(7)),
            (" 3/4 ", F(3, 4)),
        ],
    )
    def test_parse(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("text", ["0.5", "1e3", "a/b", "1/", "", "1 / 2"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            parse_rational(text)

    @given(rationals)
    def test_round_trip(self, x):
        assert parse_rational(format_rational(x)) == x


class TestMultiplicityAndLevel:
    def test_repeated(self):
        values = (F(0), F(0), F(1, 2))
        assert multiplicity_and_level(values, 0) == (2, 1)

    def test_single(self):
        values = (F(0), F(0), F(1, 2))
        assert multiplicity_and_level(values, 2) == (1, 0)

    def test_singleton(self):
        assert multiplicity_and_level((F(1, 3),), 0) == (1, 0)

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            multiplicity_and_level((F(0),), 1)


class TestTotals:
    def test_total_at_own_index(self):
        t = nearby({(F(1, 3), 1, 2): 1})
        assert total_from_primitive(t, F(1, 3), 2) == 1

    def test_total_spreads_down(self):
        t = nearby({(F(1, 3), 1, 2): 1})
        assert total_from_primitive(t, F(1, 3), 1) == 1

    def test_total_zero_outside(self):
        t = nearby({(F(1, 3), 1, 2): 1})
        assert total_from_primitive(t, F(1, 3), 0) == 0

    def test_unknown_slot_raises(self):
        t = nearby({(F(1, 3), 1, 2): 1}, unknown=[(F(1, 3), 0)])
        with pytest.raises(UnknownData):
            total_from_primitive(t, F(1, 3), 1)

    def test_prim_and_coprim(self):
        t = nearby({(F(1, 3), 1, 2): 1})
        assert primitive_and_coprimitive(t, F(1, 3), 2) == (1, 0)
        assert primitive_and_coprimitive(t, F(1, 3), 1) == (0, 1)

    def test_empty(self):
        t = nearby({})
        assert primitive_and_coprimitive(t, F(1, 3), 0) == (0, 0)

    def test_dimension_count_matches_totals(self):
        t = nearby({(F(0), 2, 3): 2, (F(1, 2), 1, 0): 1})
        by_totals = sum(
            total_from_primitive(t, r, p)
            for r in t.residues()
            for p in range(-5, 6)
        )
        assert by_totals == t.total_dimension() == 8


class TestTableShift:
    def test_identity(self):
        t = nearby({(F(1, 5), 0, 1): 1})
        assert table_shift(t, 0) == t

    def test_translation(self):
        t = nearby({(F(1, 5), 0, 1): 1})
        assert table_shift(t, -1) == nearby({(F(1, 5), 0, 0): 1})

    def test_two_entries(self):
        t = nearby({(F(1, 5), 1, 2): 1, (F(2, 5), 0, 0): 2})
        assert table_shift(t, 3) == nearby(
            {(F(1, 5), 1, 5): 1, (F(2, 5), 0, 3): 2}
        )

    @given(st.integers(min_value=-6, max_value=6))
    def test_inverse(self, s):
        t = nearby({(F(1, 5), 1, 2): 1, (F(2, 5), 0, 0): 2}, unknown=[(F(3, 5), 0)])
        assert table_shift(table_shift(t, s), -s) == t


class TestTableValidation:
    def test_rejects_unreduced_residue(self):
        with pytest.raises(ValueError):
            nearby({(F(5, 4), 0, 0): 1})

    def test_rejects_zero_multiplicity(self):
        with pytest.raises(ValueError):
            nearby({(F(1, 4), 0, 0): 0})

    def test_rejects_entry_unknown_overlap(self):
        with pytest.raises(ValueError):
            nearby({(F(1, 4), 0, 0): 1}, unknown=[(F(1, 4), 0)])


class TestParams:
    def test_normalizes_mod_one(self):
        p = HypergeometricParams((F(5, 4),), (F(-1, 3),))
        assert p.alpha == (F(1, 4),)
        assert p.beta == (F(2, 3),)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            HypergeometricParams((F(0),), (F(1, 2), F(1, 3)))

    def test_irreducibility(self):
        good = HypergeometricParams((F(0),), (F(1, 2),))
        assert good.is_irreducible
        bad = HypergeometricParams((F(0), F(1, 3)), (F(1, 3), F(1, 2)))
        assert not bad.is_irreducible
        with pytest.raises(ReducibleInput):
            bad.require_irreducible()

    def test_canonical_keeps_pairing(self):
        p = HypergeometricParams((F(1, 2), F(0)), (F(3, 4), F(1, 4)))
        q = p.canonical()
        assert sorted(q.pairs()) == sorted(p.pairs())
        assert q.pairs() == ((F(0), F(1, 4)), (F(1, 2), F(3, 4)))


def small_profile():
    return HodgeProfile(
        rank=2,
        nearby_zero=nearby({(F(0), 1, 2): 1}),
        nearby_infinity=nearby({(F(1, 2), 1, 2): 1}, point=INFINITY),
        vanishing_finite=(
            LocalHodgeTable(AT_ONE, TableKind.VANISHING, {(F(0), 0, 2): 1}),
        ),
        hodge={1: 1, 2: 1},
    )


class TestEqualUpToShift:
    def test_identity(self):
        p = small_profile()
        assert equal_up_to_shift(p, p) == 0

    @pytest.mark.parametrize("s", [-3, -1, 2, 5])
    def test_recovers_shift(self, s):
        p = small_profile()
        assert equal_up_to_shift(p, p.shifted(s)) == s

    def test_different_level_structure(self):
        p = small_profile()
        q = HodgeProfile(
            rank=2,
            nearby_zero=nearby({(F(0), 0, 2): 1, (F(1, 4), 0, 1): 1}),
            nearby_infinity=p.nearby_infinity,
            vanishing_finite=p.vanishing_finite,
            hodge={1: 1, 2: 1},
        )
        assert equal_up_to_shift(p, q) is None

    def test_profile_invariants_enforced(self):
        with pytest.raises(ValueError):
            HodgeProfile(
                rank=2,
                nearby_zero=nearby({(F(0), 0, 1): 1}),
                nearby_infinity=nearby({(F(1, 2), 1, 2): 1}, point=INFINITY),
                hodge={1: 2},
            )


class TestSingularPoint:
    def test_labels(self):
        assert str(ZERO) == "0"
        assert str(INFINITY) == "oo"
        assert str(AT_ONE) == "1"

    def test_rejects_bad_kind(self):
        with pytest.raises(ValueError):
            SingularPoint("pole")
