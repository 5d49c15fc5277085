from fractions import Fraction

import pytest

from linear import (
    AritySpace, LinearElement, aas_generators, aas_presentation_check,
    as_generators, comb_difference, graft_into, grassmann_check, ideal_space,
    nil2_generators, parse_element, quotient_dim, quotient_dims,
    random_generator_pairs, rc_generators, space_intersection, space_sum, span,
    substitute,
)
from quotients import TABLE_DIMENSIONS
from rewriting import BudgetExceeded
from trees import GENERATOR, LEAF, catalan, enumerate_trees, left_comb, right_comb

AS = [1, 1, 1, 1, 1, 1]
AAS = [1, 1, 1, 0, 0, 0]
NIL2 = [1, 1, 0, 0, 0, 0]
KRC3 = [1, 1, 2, 1, 1, 1]


class TestElements:

    def test_arithmetic(self):
        a = LinearElement.of_tree(left_comb(2))
        b = LinearElement.of_tree(right_comb(2))
        assert a - b == comb_difference(2)
        assert (a - b) + b == a
        assert (a - a).is_zero()
        assert 2 * a == a * 2
        assert (a * Fraction(1, 2)).terms == {"22000": Fraction(1, 2)}

    def test_zero_coefficients_dropped(self):
        element = LinearElement(3, {"22000": 0, "20200": 1})
        assert element.terms == {"20200": 1}

    def test_arity_mismatch(self):
        with pytest.raises(ValueError):
            LinearElement(3, {"200": 1})
        with pytest.raises(ValueError):
            LinearElement.of_tree(GENERATOR) + LinearElement.of_tree(left_comb(2))

    def test_format(self):
        assert str(comb_difference(2)) == "22000 - 20200"
        assert str(comb_difference(2, sign=1)) == "22000 + 20200"
        assert str(LinearElement(3)) == "0"
        assert str(LinearElement(3, {"20200": Fraction(-3, 2)})) == "-3/2*20200"

    def test_parse(self):
        assert parse_element("22000 - 20200") == comb_difference(2)
        assert parse_element("1/2*22000 + 22000").terms == {"22000": Fraction(3, 2)}
        assert parse_element("-20200").terms == {"20200": -1}

    @pytest.mark.parametrize("text", ["", "22000 + 200", "22000 * 3"])
    def test_parse_errors(self, text):
        with pytest.raises(ValueError):
            parse_element(text)

    def test_graft_and_substitute(self):
        element = comb_difference(2)
        grafted = graft_into(GENERATOR, 1, element)
        assert grafted.arity == 4
        assert grafted.terms == {"2220000": 1, "2202000": -1}
        assert substitute(element, [LEAF, LEAF, LEAF]) == element
        assert substitute(element, [GENERATOR, LEAF, LEAF]).arity == 4


class TestSpaces:

    def test_insert_and_contains(self):
        space = AritySpace(3)
        assert space.insert(comb_difference(2))
        assert not space.insert(comb_difference(2) * 5)
        assert space.contains(-comb_difference(2))
        assert not space.contains(LinearElement.of_tree(left_comb(2)))
        assert space.dimension == 1

    def test_full_span(self):
        trees = enumerate_trees(4)
        space = span([LinearElement.of_tree(t) for t in trees], 4)
        assert len(space) == catalan(3)
        pivots = [max(row.terms) for row in space.basis()]
        assert pivots == sorted(pivots, reverse=True)

    def test_sum_and_intersection(self):
        left = span([LinearElement.of_tree(left_comb(2))], 3)
        difference = span([comb_difference(2)], 3)
        assert space_sum(left, difference).dimension == 2
        assert space_intersection(left, difference).dimension == 0
        assert space_intersection(left, space_sum(left, difference)).dimension == 1

    def test_copy_is_independent(self):
        space = span([comb_difference(2)], 3)
        copy = space.copy()
        copy.insert(LinearElement.of_tree(left_comb(2)))
        assert space.dimension == 1
        assert copy.dimension == 2


class TestQuotients:

    def test_associative(self):
        assert quotient_dims(as_generators(), 6) == AS

    def test_anti_associative(self):
        assert quotient_dims(aas_generators(), 6) == AAS

    def test_two_nilpotent(self):
        assert quotient_dims(nil2_generators(), 6) == NIL2

    def test_right_comb_quotient(self):
        assert quotient_dims(rc_generators(3), 6) == KRC3

    def test_cas3_agrees_with_oracle(self):
        assert quotient_dims([comb_difference(3)], 6) == TABLE_DIMENSIONS[3][:6]

    def test_no_generators_is_free(self):
        assert [quotient_dim([], n) for n in range(1, 6)] == [catalan(n - 1) for n in range(1, 6)]

    def test_generator_arity_checked(self):
        with pytest.raises(ValueError):
            ideal_space([LinearElement.of_tree(LEAF)], 3)

    def test_budget(self, monkeypatch):
        import config
        monkeypatch.setattr(config, "MAX_LINEAR_ARITY", 4)
        with pytest.raises(BudgetExceeded):
            ideal_space(as_generators(), 5)


class TestGrassmann:

    def test_as_and_aas(self):
        report = grassmann_check(as_generators(), aas_generators(), 5)
        assert report.ok, report.first_failure()
        assert report.meet_dims == NIL2[:5]
        assert report.join_dims == KRC3[:5]

    @pytest.mark.slow
    def test_as_and_aas_to_seven(self):
        report = grassmann_check(as_generators(), aas_generators(), 7)
        assert report.ok, report.first_failure()
        assert report.meet_dims == [1, 1, 0, 0, 0, 0, 0]
        assert report.join_dims == [1, 1, 2, 1, 1, 1, 1]

    def test_random_pairs(self):
        for gens1, gens2 in random_generator_pairs(count=3):
            report = grassmann_check(gens1, gens2, 5)
            assert report.ok, report.first_failure()

    def test_random_pairs_are_seeded(self):
        assert random_generator_pairs(count=2, seed=7) == random_generator_pairs(count=2, seed=7)

    def test_aas_presentation(self):
        ok, details = aas_presentation_check(6)
        assert ok, details
        assert details[3] == (1, 1)
        assert details[4] == (0, 0)
