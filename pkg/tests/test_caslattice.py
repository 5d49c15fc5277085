import pytest
from hypothesis import given
from hypothesis import strategies as st

from caslattice import (
    bar, cas_join, cas_leq, cas_meet, first_dimensions, lattice_axioms_check,
    left_rank_invariant_check, linear_inclusion_check, morphism_agreement_check,
    morphism_exists,
)
from quotients import TABLE_DIMENSIONS, cas_generators, quotient_dims

indices = st.integers(min_value=1, max_value=40)


class TestOrder:

    def test_examples(self):
        assert cas_meet(3, 4) == 2
        assert cas_join(3, 4) == 7
        assert cas_leq(3, 5)
        assert not cas_leq(5, 3)
        assert cas_meet(5, 7) == 3
        assert cas_join(3, 5) == 5

    def test_associative_operad_is_the_minimum(self):
        assert all(cas_leq(2, gamma) for gamma in range(1, 30))
        assert all(cas_meet(2, gamma) == 2 for gamma in range(1, 30))

    def test_magmatic_operad_is_the_maximum(self):
        assert all(cas_leq(gamma, 1) for gamma in range(1, 30))
        assert not cas_leq(1, 4)
        assert cas_join(4, 1) == 1
        assert cas_meet(4, 1) == 4

    @pytest.mark.parametrize("bad", [0, -3, 2.0])
    def test_invalid_index(self, bad):
        with pytest.raises(ValueError):
            bar(bad)

    @given(indices, indices)
    def test_meet_below_join(self, a, b):
        assert cas_leq(cas_meet(a, b), cas_join(a, b))

    def test_lattice_axioms(self):
        ok, message = lattice_axioms_check(20)
        assert ok, message


class TestDimensions:

    @pytest.mark.parametrize("gamma", [2, 3, 4, 5, 6])
    def test_first_dimensions_match_oracle(self, gamma):
        expected = first_dimensions(gamma)
        assert quotient_dims(cas_generators(gamma), gamma + 1).as_list() == expected
        assert expected == TABLE_DIMENSIONS[gamma][:gamma + 1]

    def test_first_dimensions_need_a_comb(self):
        with pytest.raises(ValueError):
            first_dimensions(1)


class TestMorphisms:

    def test_division_criterion(self):
        assert morphism_exists(5, 3)
        assert not morphism_exists(4, 3)
        assert morphism_exists(7, 1).exists is False
        assert morphism_exists(1, 4)

    def test_oracle_agrees(self):
        check = morphism_exists(7, 4)
        assert check.exists
        assert not check.oracle_skipped
        assert check.agree

    def test_oracle_skipped_above_budget(self):
        check = morphism_exists(20, 3, n_check=8)
        assert check.oracle_skipped
        assert check.agree
        assert check.exists is False

    def test_agreement(self):
        ok, message = morphism_agreement_check(7, 5)
        assert ok, message

    @pytest.mark.parametrize("gamma", [3, 4])
    def test_left_rank_invariant(self, gamma):
        ok, message = left_rank_invariant_check(gamma, 8)
        assert ok, message

    @pytest.mark.slow
    @pytest.mark.parametrize("gamma", [3, 4, 5])
    def test_left_rank_invariant_to_nine(self, gamma):
        ok, message = left_rank_invariant_check(gamma, 9)
        assert ok, message

    def test_linear_inclusion(self):
        ok, message = linear_inclusion_check(3, 5, 6)
        assert ok, message
        assert linear_inclusion_check(3, 4, 5) == (True, "indices not comparable")
