"""
Dimensions of set-theoretic quotients of Mag
Congruence oracle, pattern-avoidance automaton, rational Hilbert series,
and the PBW basis families of CAs(3)
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

import sympy as sp

import config
from rewriting import (
    BudgetExceeded, RewriteRule, RewriteSystem, avoids_all, check_budget,
    congruence_classes, filtered_avoiders, mirror_system, reduce_tree,
)
from tables import ArityTable
from trees import (
    BinaryTree, catalan, cubic_tree, graft, iter_trees, left_comb,
    parse_prefix, right_comb, subtrees, z_tree,
)

T = sp.Symbol("t")
_MISSING = object()

# =============================================================================
# Reference Data
# =============================================================================

# Dimensions of CAs(γ), arities 1..17
TABLE_DIMENSIONS = {
    1: [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012,
        742900, 2674440, 9694845, 35357670],
    2: [1] * 17,
    3: [1, 1, 2, 4, 8, 14, 20, 19, 16, 14, 14, 15, 16, 17, 18, 19, 20],
    4: [1, 1, 2, 5, 13, 35, 96, 264, 724, 1973, 5335, 14390, 38872, 105141,
        284929, 774254, 2111088],
    5: [1, 1, 2, 5, 14, 41, 124, 384, 1210, 3861, 12440, 40392, 131997,
        433782, 1432696, 4752857, 15829261],
    6: [1, 1, 2, 5, 14, 42, 131, 420, 1375, 4576, 15431, 52598, 180895,
        626862, 2186504, 7670138, 27041833],
    7: [1, 1, 2, 5, 14, 42, 132, 428, 1420, 4796, 16432, 56966, 199444,
        704140, 2503914, 8959699, 32236657],
    8: [1, 1, 2, 5, 14, 42, 132, 429, 1429, 4851, 16718, 58331, 205632,
        731272, 2620176, 9449688, 34276116],
    9: [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4861, 16784, 58695, 207452,
        739840, 2658936, 9620232, 35011566],
}

# Rule counts per arity of completions of CAs(γ); informational for γ ≥ 4
TABLE_COMPLETION_COUNTS = {
    1: [0] * 27,
    2: [0, 0, 1] + [0] * 24,
    3: [0, 0, 0, 1, 1, 2, 3, 4] + [0] * 19,
    4: [0, 0, 0, 0, 1, 1, 0, 3, 4, 5, 18, 22, 11, 12, 15, 19, 25, 36, 44,
        52, 68, 79, 93, 105, 106, 109, 107],
    5: [0, 0, 0, 0, 0, 1, 1, 0, 0, 4, 5, 8, 18, 31, 36, 48, 73, 111, 172,
        272, 455, 783],
    6: [0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 5, 6, 11, 23, 30, 48, 73, 117,
        204, 348, 589, 1004],
    7: [0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 6, 7, 16, 24, 32, 49, 88,
        150, 261, 475, 854],
    8: [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 7, 8, 21, 29, 34, 53,
        93, 172, 311, 565],
    9: [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 8, 9, 28, 30, 36,
        57, 101, 185, 348, 648],
}

CAS3_HILBERT = "t*(1 - t + t**2 + t**3 + 2*t**4 + 2*t**5 - 7*t**7 - 2*t**8 + t**9 + 2*t**10 + t**11)/(1 - t)**2"
CUBIC_PAIR_HILBERT = "t*(1 - t)/(1 - 2*t)"
MAG23_HILBERT = "t*(1 - 2*t + 2*t**2 + t**4 - t**6)/(1 - t)**3"

# Pairs {i, j} of cubic trees whose quotient has dimensions 2^{n-2}
POWER_OF_TWO_PAIRS = [(1, 2), (4, 5), (1, 3), (3, 5), (1, 4), (2, 5), (2, 4)]


def completion_counts_diff(gamma, counts, through=None):
    """
    Compare rules per arity of a CAs(γ) completion with the reference counts.

    Args:
        gamma: Comb index
        counts: ArityTable of rules per arity
        through: Last arity to compare; defaults to the largest arity in counts

    Returns:
        None when γ has no reference row, else
        {"gamma", "compared_through", "differing": {arity: {observed, reference}}}
    """
    reference = TABLE_COMPLETION_COUNTS.get(gamma)
    if reference is None:
        return None
    if through is None:
        through = max(counts.values) if counts.values else 0
    top = min(len(reference), through)
    differing = {}
    for n in range(1, top + 1):
        observed = counts.values.get(n, 0)
        if observed != reference[n - 1]:
            differing[str(n)] = {"observed": observed, "reference": reference[n - 1]}
    return {"gamma": gamma, "compared_through": top, "differing": differing}


# =============================================================================
# Avoidance Automaton
# =============================================================================

class AvoidanceAutomaton:
    """
    Bottom-up tree automaton recognizing trees that avoid every pattern.

    A state is the frozenset of (pattern, node) pairs, over internal pattern
    nodes, whose pattern subtree matches at the root of the evaluated tree.
    A state containing a pattern root is dead and is represented by None.
    """

    DEAD = None

    def __init__(self, patterns):
        patterns = list(patterns)
        if not patterns:
            raise ValueError("avoidance automaton needs at least one pattern")
        for pattern in patterns:
            if pattern.degree < 1:
                raise ValueError("patterns must have degree at least 1")
        self.patterns = patterns
        # (pattern index, node position) -> (left requirement, right requirement)
        self._nodes = []
        for k, pattern in enumerate(patterns):
            for position, current in subtrees(pattern):
                if current.is_leaf:
                    continue
                left_position = position + 1
                right_position = position + 1 + len(current.left.word)
                left_need = None if current.left.is_leaf else (k, left_position)
                right_need = None if current.right.is_leaf else (k, right_position)
                self._nodes.append(((k, position), left_need, right_need))
        self._roots = {(k, 0) for k in range(len(patterns))}
        self._transitions = {}
        self.leaf_state = frozenset()

    def transition(self, left_state, right_state):
        """State of (A, B) from the states of A and B."""
        key = (left_state, right_state)
        cached = self._transitions.get(key, _MISSING)
        if cached is not _MISSING:
            return cached
        if left_state is None or right_state is None:
            state = self.DEAD
        else:
            matched = frozenset(
                label for label, left_need, right_need in self._nodes
                if (left_need is None or left_need in left_state)
                and (right_need is None or right_need in right_state)
            )
            state = self.DEAD if matched & self._roots else matched
        self._transitions[key] = state
        return state

    def evaluate(self, t):
        """Run the automaton on a tree."""
        if t.is_leaf:
            return self.leaf_state
        return self.transition(self.evaluate(t.left), self.evaluate(t.right))

    def accepts(self, t):
        return self.evaluate(t) is not self.DEAD

    @property
    def state_count(self):
        states = {self.leaf_state}
        states.update(s for s in self._transitions.values() if s is not None)
        return len(states)

    def counts(self, n_max):
        """
        Number of avoiding trees per arity, by dynamic programming over states.

        Returns:
            {arity: count} for 1..n_max
        """
        by_arity = {1: {self.leaf_state: 1}}
        for n in range(2, n_max + 1):
            layer = {}
            for k in range(1, n):
                for left_state, left_count in by_arity[k].items():
                    for right_state, right_count in by_arity[n - k].items():
                        state = self.transition(left_state, right_state)
                        if state is None:
                            continue
                        layer[state] = layer.get(state, 0) + left_count * right_count
            by_arity[n] = layer
        return {n: sum(layer.values()) for n, layer in by_arity.items() if n <= n_max}


def avoider_count(patterns, n_max):
    """
    Per-arity number of trees avoiding every pattern.

    Args:
        patterns: Nonempty collection of trees of degree ≥ 1
        n_max: Largest arity

    Returns:
        ArityTable
    """
    automaton = AvoidanceAutomaton(patterns)
    return ArityTable("avoiders", automaton.counts(n_max))


def filtered_avoider_count(patterns, n_max):
    """Same counts as avoider_count, by enumerating every tree."""
    table = ArityTable("avoiders (filtered)")
    for n in range(1, n_max + 1):
        table[n] = len(filtered_avoiders(list(patterns), n))
    return table


# =============================================================================
# Rational Hilbert Series
# =============================================================================

@dataclass(frozen=True)
class RationalSeries:
    """numerator(t) / denominator(t) with integer coefficients."""
    numerator: sp.Poly
    denominator: sp.Poly

    @classmethod
    def from_expression(cls, expression):
        """
        Build from a rational expression in t.

        Args:
            expression: sympy expression or string such as "t/(1 - t)"
        """
        expr = sp.sympify(expression, locals={"t": T})
        numerator, denominator = sp.fraction(sp.together(expr))
        return cls(sp.Poly(numerator, T, domain="ZZ"), sp.Poly(denominator, T, domain="ZZ"))

    @property
    def expression(self):
        return self.numerator.as_expr() / self.denominator.as_expr()

    def __str__(self):
        return str(self.expression)


def taylor_coefficients(series, n_max):
    """
    Exact coefficients of t^1..t^n_max.

    Raises:
        ValueError if the denominator vanishes at 0
    """
    if isinstance(series, str):
        series = RationalSeries.from_expression(series)
    if series.denominator.eval(0) == 0:
        raise ValueError(f"denominator of {series} has zero constant term")
    expansion = sp.series(series.expression, T, 0, n_max + 1).removeO()
    poly = sp.Poly(expansion, T)
    table = ArityTable("taylor")
    for n in range(1, n_max + 1):
        coefficient = poly.coeff_monomial(T ** n)
        if not coefficient.is_integer:
            raise ValueError(f"coefficient of t^{n} is not an integer: {coefficient}")
        table[n] = int(coefficient)
    return table


def hilbert_polynomial(table):
    """Σ table[n] tⁿ as a sympy expression."""
    return sum(sp.Integer(v) * T ** n for n, v in table.values.items())


# =============================================================================
# Congruence Oracle Dimensions
# =============================================================================

def quotient_dims(generators, n_max, start=1):
    """
    Class counts of the congruence generated by tree pairs, per arity.

    Stops at the first arity over budget and records it as the cutoff.
    """
    table = ArityTable("quotient dims")
    for n in range(start, n_max + 1):
        if not generators:
            table[n] = catalan(n - 1)
            continue
        try:
            table[n] = congruence_classes(generators, n).class_count
        except BudgetExceeded:
            table.cutoff = n
            break
    return table


def cas_generators(gamma):
    """The generator ℒ_γ ~ ℛ_γ of CAs(γ)."""
    if gamma < 1:
        raise ValueError(f"comb index must be at least 1, got {gamma}")
    if gamma == 1:
        return []
    return [(left_comb(gamma), right_comb(gamma))]


def cubic_generators(i, j):
    """The generator a_i ~ a_j."""
    if i == j:
        raise ValueError("cubic indices must differ")
    return [(cubic_tree(i), cubic_tree(j))]


# =============================================================================
# CAs(3) PBW Basis
# =============================================================================

CAS3_RULE_WORDS = [
    ("2220000", "2020200"),
    ("220202000", "220020200"),
    ("20202202000", "20202020200"),
    ("20220200200", "20202020200"),
    ("2020220020200", "2020202022000"),
    ("2022002020200", "2020202200200"),
    ("2202200020200", "2200202020200"),
    ("202020202200200", "202020202022000"),
    ("202020220022000", "202020202020200"),
    ("220020202200200", "220020202022000"),
    ("220200202020200", "220020202022000"),
]


def cas3_system():
    """The convergent 11-rule presentation of CAs(3)."""
    return RewriteSystem(CAS3_RULE_WORDS, name="cas:3")


def cas3_type_a(n):
    """z_d ∘_{d+1} z_{n-1-d} for d = 1..n-1."""
    return [graft(z_tree(d), d + 1, z_tree(n - 1 - d)) for d in range(1, n)]


def cas3_type_b(n):
    """The four absorbing normal forms of arity n."""
    if n < 5:
        raise ValueError(f"type-B family needs arity at least 5, got {n}")
    return [
        right_comb(n - 1),
        parse_prefix("2" + "200" + "20" * (n - 3) + "0"),
        parse_prefix("20" * (n - 3) + "22000"),
        parse_prefix("2" + "200" + "20" * (n - 5) + "22000"),
    ]


def cas3_basis(n):
    """
    Normal forms of CAs(3) in arity n ≥ 11: n - 1 of type A, 4 of type B.

    Returns:
        List of n + 3 trees
    """
    if n < 11:
        raise ValueError(f"the CAs(3) basis families describe arity ≥ 11, got {n}")
    return cas3_type_a(n) + cas3_type_b(n)


def absorbing_check(n_max, system=None):
    """
    Check that composing a type-B tree with any normal form, on either side,
    normalizes to a type-B tree, for all results of arity ≤ n_max.

    Returns:
        (success, message)
    """
    system = system or cas3_system()
    rules = system.rules
    cache = {}
    normal_forms = {}
    checked = 0
    for b_arity in range(11, n_max + 1):
        for b in cas3_type_b(b_arity):
            for other_arity in range(1, n_max - b_arity + 2):
                target = set(cas3_type_b(b_arity + other_arity - 1))
                if other_arity not in normal_forms:
                    normal_forms[other_arity] = filtered_avoiders(system.lhs_trees, other_arity)
                for other in normal_forms[other_arity]:
                    composites = [graft(b, i, other) for i in range(1, b.arity + 1)]
                    composites += [graft(other, i, b) for i in range(1, other.arity + 1)]
                    for composite in composites:
                        result = reduce_tree(rules, composite, cache)
                        checked += 1
                        if result not in target:
                            return False, f"{composite.word} normalizes to {result.word}, not of type B"
    return True, f"{checked} compositions absorbed"


# =============================================================================
# Mag^{2,3} / Mag^{3,4}
# =============================================================================

def mag23_family_rule(k):
    """(ℒ_k ∘₁ ℛ₂, ℒ₁) -> ((ℒ₁, ℛ_k), ℒ₁), arity k + 5."""
    lhs = "2" + "2" * k + "20200" + "0" * k + "200"
    rhs = "2" + "2200" + "20" * k + "0" + "200"
    return RewriteRule(parse_prefix(lhs), parse_prefix(rhs))


def mag34_rule_family(max_arity, side="3,4"):
    """
    Finite truncation of the conjectured presentation.

    The cubic rule runs against lex order while every other rule is
    lex-decreasing (mirror-lex on the 3,4 side), so neither side has a
    termination order and normal_form refuses it. The family is validated by
    comparing its normal-form counts with the dimension oracle instead.

    Args:
        max_arity: Largest member arity, at least 5
        side: "2,3" for the system with cubic rule a2 -> a3, or "3,4" for
              its mirror, whose cubic rule is a4 -> a3

    Returns:
        RewriteSystem flagged as truncated
    """
    if max_arity < 5:
        raise ValueError(f"max_arity must be at least 5, got {max_arity}")
    if side not in ("2,3", "3,4"):
        raise ValueError(f"side must be '2,3' or '3,4', got {side!r}")
    rules = [
        RewriteRule(cubic_tree(2), cubic_tree(3)),
        RewriteRule(parse_prefix("22200020200"), parse_prefix("22020020200")),
        RewriteRule(parse_prefix("2222000200200"), parse_prefix("2220020200200")),
    ]
    k = 1
    while k + 5 <= max_arity:
        rules.append(mag23_family_rule(k))
        k += 1
    rules = [rule for rule in rules if rule.arity <= max_arity]
    system = RewriteSystem(rules, name="mag:2,3", truncated=True)
    if side == "3,4":
        system = mirror_system(system)
        system.name = "mag:3,4"
    return system


def mag23_closed_form(n):
    """n(n+1)/2 - 7, valid for n ≥ 5."""
    return n * (n + 1) // 2 - 7
