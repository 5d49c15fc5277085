import pytest
from hypothesis import given, settings

from conftest import trees
from quotients import CAS3_RULE_WORDS, cas3_system
from rewriting import (
    LEX, MIRROR_LEX, BudgetExceeded, DisjointSet, RewriteRule, RewriteSystem,
    TerminationError, branching_pairs, certify_convergence, check_budget,
    congruence_classes, critical_trees, filtered_avoiders, format_rules,
    is_lex_decreasing, is_normal, make_rule, mirror_system, normal_form,
    normal_form_counts, one_step_rewrites, parse_congruence, parse_rules,
    reduce_tree, require_termination, termination_order,
)
from trees import (
    LEAF, catalan, complete_graft, cubic_tree, enumerate_trees, left_comb, mirror,
    parse_prefix, right_comb,
)

ASSOCIATIVITY = RewriteSystem([RewriteRule(left_comb(2), right_comb(2))], name="as")


class TestRules:

    def test_make_rule(self):
        rule = make_rule("22000", "20200")
        assert rule.arity == 3
        assert rule.degree == 2
        assert str(rule) == "22000 -> 20200"

    def test_make_rule_rejects_arity_mismatch(self):
        with pytest.raises(ValueError):
            make_rule("22000", "200")

    def test_make_rule_rejects_trivial_rule(self):
        with pytest.raises(ValueError):
            make_rule("22000", "22000")

    def test_system_drops_duplicates(self):
        system = RewriteSystem([("22000", "20200"), ("22000", "20200")])
        assert len(system) == 1
        assert system.degree == 2

    def test_rule_counts_per_arity(self, cas3):
        assert cas3.rule_counts() == {4: 1, 5: 1, 6: 2, 7: 3, 8: 4}
        assert RewriteSystem().rule_counts() == {}

    def test_parse_rules_with_comments(self):
        text = "# associativity\n22000 -> 20200  # the only rule\n\n"
        system = parse_rules(text, name="as")
        assert system == ASSOCIATIVITY
        assert format_rules(system).splitlines() == ["# as", "22000 -> 20200"]

    def test_parse_rules_reports_line(self):
        with pytest.raises(ValueError, match="line 2"):
            parse_rules("22000 -> 20200\n22000 20200\n")

    def test_parse_congruence(self):
        pairs = parse_congruence("(L,(L,L)) ~ ((L,L),L)\n")
        assert [(a.word, b.word) for a, b in pairs] == [("20200", "22000")]
        with pytest.raises(ValueError, match="arities"):
            parse_congruence("200 ~ 22000")


class TestTermination:

    def test_cas3_presentation_is_lex_decreasing(self, cas3):
        assert len(cas3) == 11
        assert is_lex_decreasing(cas3)
        assert termination_order(cas3) == LEX

    def test_mirrored_system_is_mirror_lex(self, cas3):
        mirrored = mirror_system(cas3)
        assert not is_lex_decreasing(mirrored)
        assert termination_order(mirrored) == MIRROR_LEX

    def test_normal_form_accepts_lex_systems(self, cas3):
        assert require_termination(ASSOCIATIVITY) == LEX
        assert normal_form(cas3, left_comb(3)) == right_comb(3)

    def test_normal_form_accepts_mirror_lex_systems(self, cas3):
        mirrored_as = mirror_system(ASSOCIATIVITY)
        assert require_termination(mirrored_as) == MIRROR_LEX
        for n in range(1, 8):
            assert normal_form(mirrored_as, right_comb(n)) == left_comb(n)
        mirrored = mirror_system(cas3)
        for t in enumerate_trees(7):
            assert normal_form(mirrored, mirror(t)) == mirror(normal_form(cas3, t))

    def test_mixed_orientation_is_rejected(self):
        system = RewriteSystem([
            RewriteRule(cubic_tree(2), cubic_tree(3)),
            RewriteRule(cubic_tree(5), cubic_tree(1)),
        ])
        assert termination_order(system) is None
        with pytest.raises(TerminationError):
            normal_form(system, cubic_tree(2))


class TestNormalForms:

    def test_associativity_normalizes_to_right_comb(self):
        for n in range(1, 8):
            assert normal_form(ASSOCIATIVITY, left_comb(n)) == right_comb(n)

    @given(trees(7))
    def test_every_tree_is_associatively_a_right_comb(self, t):
        assert normal_form(ASSOCIATIVITY, t) == right_comb(t.degree)

    def test_one_step_rewrites(self):
        results = one_step_rewrites(ASSOCIATIVITY, left_comb(3))
        assert results == {cubic_tree(3), cubic_tree(4)}

    def test_left_comb_has_two_rewrites(self):
        system = RewriteSystem([RewriteRule(left_comb(3), right_comb(3))])
        found = one_step_rewrites(system, left_comb(4))
        assert {t.word for t in found} == {"220202000", "220020200"}
        assert one_step_rewrites(system, right_comb(6)) == set()

    def test_rewrite_inside_a_large_tree(self):
        lhs, rhs = parse_prefix("2202000"), parse_prefix("2020200")
        subs = [right_comb(3), LEAF, left_comb(4), LEAF]
        t = complete_graft(lhs, subs)
        assert t.arity == 11
        assert complete_graft(rhs, subs) in one_step_rewrites(RewriteSystem([RewriteRule(lhs, rhs)]), t)

    def test_cas3_normal_form_of_left_comb(self, cas3):
        assert normal_form(cas3, left_comb(4)).word == "220020200"
        assert normal_form(cas3, left_comb(3)) == right_comb(3)

    def test_is_normal(self, cas3):
        assert is_normal(cas3, right_comb(6))
        assert not is_normal(cas3, left_comb(3))

    @given(trees(7))
    @settings(deadline=None)
    def test_normal_forms_avoid_every_lhs(self, t):
        result = normal_form(cas3_system(), t)
        assert is_normal(cas3_system(), result)
        assert result.arity == t.arity

    def test_reduce_tree_cache(self, cas3):
        cache = {}
        first = reduce_tree(cas3.rules, left_comb(6), cache)
        assert cache[left_comb(6).word] == first
        assert reduce_tree(cas3.rules, left_comb(6), cache) == first


class TestBranching:

    def test_critical_trees_of_associativity(self):
        assert [t.word for t in critical_trees(ASSOCIATIVITY)] == [left_comb(3).word]

    def test_branching_pairs_join_for_associativity(self):
        for pair in branching_pairs(ASSOCIATIVITY, 4):
            assert normal_form(ASSOCIATIVITY, pair.first) == normal_form(ASSOCIATIVITY, pair.second)

    def test_comb_branching_pair(self):
        system = RewriteSystem([RewriteRule(left_comb(3), right_comb(3))])
        (pair,) = branching_pairs(system, 4)
        assert pair.tree == left_comb(4)
        assert {pair.first.word, pair.second.word} == {"220202000", "220020200"}

    def test_critical_trees_sorted(self, cas3):
        found = critical_trees(cas3, 13)
        keys = [(t.degree, t.word) for t in found]
        assert keys == sorted(keys)
        assert all(t.degree <= 13 for t in found)

    def test_cas3_is_convergent(self, cas3):
        certificate = certify_convergence(cas3, bound=13)
        assert certificate
        assert certificate.to_dict()["convergent"] is True

    def test_single_comb_rule_is_not_convergent(self):
        system = RewriteSystem([RewriteRule(left_comb(3), right_comb(3))])
        counterexample = certify_convergence(system)
        assert not counterexample
        data = counterexample.to_dict()
        assert data["convergent"] is False
        assert data["normal_forms"][0] != data["normal_forms"][1]

    def test_exhaustive_mode_agrees(self):
        assert certify_convergence(ASSOCIATIVITY, bound=5, mode="exhaustive")

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            certify_convergence(ASSOCIATIVITY, mode="fast")

    def test_truncated_system_cannot_be_certified(self):
        truncated = RewriteSystem(ASSOCIATIVITY.rules, truncated=True)
        with pytest.raises(ValueError, match="truncated"):
            certify_convergence(truncated)


class TestCounting:

    def test_associativity_has_one_normal_form(self):
        table = normal_form_counts(ASSOCIATIVITY, 12)
        assert table.as_list() == [1] * 12

    def test_empty_system_counts_catalan(self):
        table = normal_form_counts(RewriteSystem(), 8)
        assert table.as_list() == [catalan(n - 1) for n in range(1, 9)]

    def test_cas3_counts(self, cas3):
        table = normal_form_counts(cas3, 14)
        assert table.as_list() == [1, 1, 2, 4, 8, 14, 20, 19, 16, 14, 14, 15, 16, 17]

    def test_filtered_avoiders(self):
        found = filtered_avoiders([left_comb(2)], 5)
        assert found == [right_comb(4)]


class TestOracle:

    def test_disjoint_set(self):
        ds = DisjointSet()
        for e in "abcd":
            ds.make_set(e)
        ds.union("a", "b")
        ds.union("c", "d")
        ds.union("b", "d")
        assert ds.find("a") == ds.find("c")
        assert ds.sorted() == (("a", "b", "c", "d"),)

    def test_associativity_classes(self):
        pairs = [(left_comb(2), right_comb(2))]
        for n in range(1, 9):
            assert congruence_classes(pairs, n).class_count == 1

    def test_cubic_pair_merges_two_trees(self):
        partition = congruence_classes([(cubic_tree(1), cubic_tree(2))], 4)
        assert partition.class_count == 4
        assert partition.same_class(cubic_tree(1), cubic_tree(2))
        assert not partition.same_class(cubic_tree(1), cubic_tree(3))

    def test_rules_accepted_as_generators(self, cas3):
        partition = congruence_classes(cas3.rules, 7)
        assert partition.class_count == 20

    def test_budget(self):
        with pytest.raises(BudgetExceeded) as excinfo:
            check_budget("test", 40, 13)
        assert excinfo.value.arity == 40
        assert excinfo.value.limit == 13
        assert excinfo.value.estimate == catalan(39)

    def test_mirror_system(self):
        mirrored = mirror_system(ASSOCIATIVITY)
        (rule,) = mirrored.rules
        assert rule.lhs == mirror(left_comb(2)) == right_comb(2)
        assert rule.rhs == left_comb(2)


def test_cas3_rule_words_parse():
    for lhs, rhs in CAS3_RULE_WORDS:
        rule = make_rule(lhs, rhs)
        assert rule.lhs > rule.rhs
