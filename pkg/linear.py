"""
Linear magmatic quotients over the rationals
Ideal arity-spaces, quotient dimensions, sums and intersections of ideals,
and the Grassmann identity check
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List

import numpy as np

import config
from rewriting import check_budget
from trees import (
    BinaryTree, catalan, complete_graft, enumerate_trees, graft, left_comb,
    parse_prefix, right_comb,
)

# =============================================================================
# Linear Elements
# =============================================================================

class LinearElement:
    """
    A formal rational combination of trees of one arity.

    Terms are keyed on prefix words; zero coefficients are never stored.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity, terms=None):
        self.arity = arity
        self.terms = {}
        for word, coefficient in (terms or {}).items():
            if isinstance(word, BinaryTree):
                tree = word
            else:
                tree = parse_prefix(word)
            if tree.arity != arity:
                raise ValueError(f"term {tree.word} has arity {tree.arity}, expected {arity}")
            coefficient = Fraction(coefficient)
            if coefficient != 0:
                self.terms[tree.word] = self.terms.get(tree.word, Fraction(0)) + coefficient
                if self.terms[tree.word] == 0:
                    del self.terms[tree.word]

    @classmethod
    def of_tree(cls, t, coefficient=1):
        return cls(t.arity, {t: coefficient})

    @classmethod
    def _raw(cls, arity, terms):
        element = cls.__new__(cls)
        element.arity = arity
        element.terms = {w: c for w, c in terms.items() if c != 0}
        return element

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if self.arity != other.arity:
            raise ValueError(f"cannot add elements of arities {self.arity} and {other.arity}")
        terms = dict(self.terms)
        for word, coefficient in other.terms.items():
            terms[word] = terms.get(word, Fraction(0)) + coefficient
        return LinearElement._raw(self.arity, terms)

    def __neg__(self):
        return LinearElement._raw(self.arity, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        return LinearElement._raw(self.arity, {w: c * scalar for w, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LinearElement) and self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __repr__(self):
        return f"LinearElement({format_element(self)!r})"

    def __str__(self):
        return format_element(self)


def _fraction_text(value):
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_element(element):
    """Text form `c1*WORD1 + c2*WORD2`, terms in decreasing lex order."""
    if element.is_zero():
        return "0"
    parts = []
    for word in sorted(element.terms, reverse=True):
        coefficient = element.terms[word]
        sign = "-" if coefficient < 0 else "+"
        magnitude = abs(coefficient)
        body = word if magnitude == 1 else f"{_fraction_text(magnitude)}*{word}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


_TERM = re.compile(r"([+-]?)(?:(\d+(?:/\d+)?)\*)?([02]+)")


def parse_element(text):
    """
    Parse `c1*WORD1 + c2*WORD2 ...` with rational coefficients `p/q`.

    Raises:
        ValueError on malformed input or mixed arities
    """
    source = "".join(text.split())
    if not source:
        raise ValueError("empty linear element")
    terms = {}
    position = 0
    arity = None
    while position < len(source):
        match = _TERM.match(source, position)
        if not match or match.end() == position or (position > 0 and not match.group(1)):
            raise ValueError(f"linear element {text!r}: cannot parse at position {position}")
        sign, coefficient, word = match.groups()
        tree = parse_prefix(word)
        if arity is None:
            arity = tree.arity
        value = Fraction(coefficient) if coefficient else Fraction(1)
        if sign == "-":
            value = -value
        if tree.arity != arity:
            raise ValueError(f"linear element {text!r}: mixed arities {arity} and {tree.arity}")
        terms[tree.word] = terms.get(tree.word, Fraction(0)) + value
        position = match.end()
    return LinearElement(arity, terms)


def graft_into(t, i, element):
    """t ∘_i element, extended linearly."""
    arity = t.arity + element.arity - 1
    terms = {}
    for word, coefficient in element.terms.items():
        result = graft(t, i, parse_prefix(word)).word
        terms[result] = terms.get(result, Fraction(0)) + coefficient
    return LinearElement._raw(arity, terms)


def substitute(element, subs):
    """element ∘ [s_1, ..., s_k], extended linearly."""
    arity = sum(s.arity for s in subs)
    terms = {}
    for word, coefficient in element.terms.items():
        result = complete_graft(parse_prefix(word), subs).word
        terms[result] = terms.get(result, Fraction(0)) + coefficient
    return LinearElement._raw(arity, terms)


# =============================================================================
# Echelon Spaces
# =============================================================================

class AritySpace:
    """
    Subspace of the arity-n component, kept in row-echelon form.

    Each row is normalized so its lex-largest word (the pivot) has
    coefficient 1; pivots are distinct.
    """

    def __init__(self, arity):
        self.arity = arity
        self.rows = {}  # pivot word -> {word: Fraction}

    @property
    def dimension(self):
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def basis(self):
        """Rows as LinearElements, pivots strictly decreasing."""
        return [LinearElement._raw(self.arity, self.rows[p]) for p in sorted(self.rows, reverse=True)]

    def reduce(self, terms):
        """Eliminate pivots from the leading terms of a vector."""
        vector = dict(terms)
        while vector:
            lead = max(vector)
            row = self.rows.get(lead)
            if row is None:
                return vector
            factor = vector[lead]
            for word, coefficient in row.items():
                value = vector.get(word, Fraction(0)) - factor * coefficient
                if value == 0:
                    vector.pop(word, None)
                else:
                    vector[word] = value
        return vector

    def insert(self, element):
        """
        Add a vector to the span.

        Returns:
            True if the dimension grew
        """
        terms = element.terms if isinstance(element, LinearElement) else element
        vector = self.reduce(terms)
        if not vector:
            return False
        lead = max(vector)
        scale = vector[lead]
        self.rows[lead] = {w: c / scale for w, c in vector.items()}
        return True

    def contains(self, element):
        return not self.reduce(element.terms)

    def copy(self):
        space = AritySpace(self.arity)
        space.rows = {p: dict(row) for p, row in self.rows.items()}
        return space


def span(elements, arity):
    space = AritySpace(arity)
    for element in elements:
        space.insert(element)
    return space


# =============================================================================
# Ideals
# =============================================================================

def _compositions(total, parts):
    """Ordered tuples of `parts` positive integers summing to total."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def ideal_spanning_set(generators, n):
    """
    { r ∘_i (g ∘ [r_1, ..., r_k]) } of total arity n, deduplicated.

    Generation order is lex on (substitutions, context, position).
    """
    seen = set()
    spanning = []
    for g in generators:
        k = g.arity
        if k > n or g.is_zero():
            continue
        for context_arity in range(1, n - k + 2):
            inner_arity = n - context_arity + 1
            substituted = []
            for sizes in _compositions(inner_arity, k):
                for subs in product(*(enumerate_trees(size) for size in sizes)):
                    substituted.append(substitute(g, subs))
            for r in enumerate_trees(context_arity):
                for i in range(1, context_arity + 1):
                    for inner in substituted:
                        element = graft_into(r, i, inner)
                        if element.is_zero() or element in seen:
                            continue
                        seen.add(element)
                        spanning.append(element)
    return spanning


def ideal_space(generators, n):
    """
    Row-echelon basis of the arity-n component of the ideal generated.

    Raises:
        BudgetExceeded above MAX_LINEAR_ARITY
    """
    check_budget("ideal_space", n, config.MAX_LINEAR_ARITY)
    for g in generators:
        if g.arity < 2:
            raise ValueError("ideal generators must have arity at least 2")
    space = AritySpace(n)
    for element in ideal_spanning_set(generators, n):
        space.insert(element)
        if space.dimension == catalan(n - 1):
            break
    return space


def quotient_dim(generators, n):
    """Catalan(n-1) minus the dimension of the ideal at arity n."""
    return catalan(n - 1) - ideal_space(generators, n).dimension


def quotient_dims(generators, n_max):
    """quotient_dim for n = 1..n_max as a list."""
    return [quotient_dim(generators, n) for n in range(1, n_max + 1)]


def space_sum(a, b):
    """Row space of the union of two bases."""
    if a.arity != b.arity:
        raise ValueError(f"arity mismatch: {a.arity} and {b.arity}")
    result = a.copy()
    for element in b.basis():
        result.insert(element)
    return result


def space_intersection(a, b):
    """
    Intersection by the kernel method.

    Rows of A and B are eliminated together while tracking combinations;
    each row that vanishes gives a relation Σ x_i a_i = Σ y_j b_j, whose
    A-side is an element of the intersection.
    """
    if a.arity != b.arity:
        raise ValueError(f"arity mismatch: {a.arity} and {b.arity}")
    a_rows = a.basis()
    tagged = [(row.terms, ("a", index)) for index, row in enumerate(a_rows)]
    tagged += [(row.terms, ("b", index)) for index, row in enumerate(b.basis())]

    pivots = {}  # word -> (vector, combination)
    result = AritySpace(a.arity)
    for terms, tag in tagged:
        vector = dict(terms)
        combination = {tag: Fraction(1)}
        while vector:
            lead = max(vector)
            if lead not in pivots:
                break
            row, row_combination = pivots[lead]
            factor = vector[lead] / row[lead]
            for word, coefficient in row.items():
                value = vector.get(word, Fraction(0)) - factor * coefficient
                if value == 0:
                    vector.pop(word, None)
                else:
                    vector[word] = value
            for key, coefficient in row_combination.items():
                value = combination.get(key, Fraction(0)) - factor * coefficient
                if value == 0:
                    combination.pop(key, None)
                else:
                    combination[key] = value
        if vector:
            pivots[max(vector)] = (vector, combination)
            continue
        # Σ over A-rows of the relation is a common element
        common = LinearElement._raw(a.arity, {})
        for (side, index), coefficient in combination.items():
            if side == "a":
                common = common + a_rows[index] * coefficient
        result.insert(common)
    return result


# =============================================================================
# Grassmann Identity
# =============================================================================

@dataclass
class GrassmannReport:
    """Per-arity quotient dimensions for two ideals, their sum and intersection."""
    rows: List[Dict[str, int]] = field(default_factory=list)

    @property
    def ok(self):
        return all(row["holds"] for row in self.rows)

    @property
    def meet_dims(self):
        return [row["meet"] for row in self.rows]

    @property
    def join_dims(self):
        return [row["join"] for row in self.rows]

    def first_failure(self):
        return next((row for row in self.rows if not row["holds"]), None)


def grassmann_check(gens1, gens2, n_max):
    """
    Check H_meet + H_join = H_1 + H_2 arity by arity.

    The meet is the quotient by I_1 + I_2 and the join the quotient by
    I_1 ∩ I_2, the latter computed by the kernel method.
    """
    report = GrassmannReport()
    for n in range(1, n_max + 1):
        total = catalan(n - 1)
        first = ideal_space(gens1, n)
        second = ideal_space(gens2, n)
        summed = space_sum(first, second)
        intersected = space_intersection(first, second)
        q1, q2 = total - first.dimension, total - second.dimension
        meet, join = total - summed.dimension, total - intersected.dimension
        report.rows.append({
            "n": n, "first": q1, "second": q2, "meet": meet, "join": join,
            "holds": meet + join == q1 + q2,
        })
    return report


def random_generator(rng, arity=None):
    """
    A random nonzero element of arity 3 or 4 with small integer coefficients.

    Args:
        rng: numpy Generator
    """
    if arity is None:
        arity = int(rng.choice([3, 4]))
    trees = enumerate_trees(arity)
    while True:
        coefficients = rng.integers(-2, 3, size=len(trees))
        if np.any(coefficients != 0):
            return LinearElement(arity, {t: int(c) for t, c in zip(trees, coefficients)})


def random_generator_pairs(count=None, seed=None):
    """Seeded pairs of random generators for the Grassmann suite."""
    count = config.RANDOM_GENERATOR_PAIRS if count is None else count
    rng = np.random.default_rng(config.RANDOM_SEED if seed is None else seed)
    return [([random_generator(rng)], [random_generator(rng)]) for _ in range(count)]


# =============================================================================
# Example Operads
# =============================================================================

def comb_difference(gamma, sign=-1):
    """ℒ_γ + sign·ℛ_γ."""
    return LinearElement(gamma + 1, {left_comb(gamma): 1, right_comb(gamma): sign})


def as_generators():
    return [comb_difference(2, -1)]


def aas_generators():
    return [comb_difference(2, 1)]


def nil2_generators():
    return [LinearElement.of_tree(left_comb(2)), LinearElement.of_tree(right_comb(2))]


def rc_generators(gamma):
    """{t - ℛ_γ : t of arity γ + 1}."""
    target = right_comb(gamma)
    return [
        LinearElement(gamma + 1, {t: 1, target: -1})
        for t in enumerate_trees(gamma + 1) if t != target
    ]


def aas_presentation_check(n_max):
    """
    Normal monomials of {ℒ₂ -> -ℛ₂, ℛ₃ -> 0} versus dim AAs, per arity.

    Returns:
        (success, {n: (avoiders, quotient_dim)})
    """
    from quotients import avoider_count

    avoiders = avoider_count([left_comb(2), right_comb(3)], n_max)
    details = {}
    for n in range(1, n_max + 1):
        details[n] = (avoiders[n], quotient_dim(aas_generators(), n))
    return all(a == b for a, b in details.values()), details
