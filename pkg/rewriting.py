"""
Rewrite systems on binary trees
Induced relation, termination orders, normal forms, branching analysis,
convergence certificates and the brute-force congruence oracle
"""

import collections
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Tuple

import config
from tables import ArityTable
from trees import (
    BinaryTree, catalan, complete_graft, iter_trees, lex_compare, match_at,
    mirror, parse_tree, replace_at, subtrees,
)

LEX = "lex"
MIRROR_LEX = "mirror-lex"

# =============================================================================
# Errors
# =============================================================================

class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the configured arity budget."""

    def __init__(self, what, arity, limit):
        self.arity = arity
        self.limit = limit
        self.estimate = catalan(arity - 1) if arity >= 1 else 0
        super().__init__(
            f"{what}: arity {arity} exceeds the budget {limit} "
            f"(would enumerate {self.estimate} trees)"
        )


class TerminationError(ValueError):
    """The rule set is not certified terminating."""


def check_budget(what, arity, limit=None):
    """Raise BudgetExceeded if arity is above the enumeration limit."""
    limit = config.MAX_ENUM_ARITY if limit is None else limit
    if arity > limit:
        raise BudgetExceeded(what, arity, limit)


# =============================================================================
# Rules and Systems
# =============================================================================

class RewriteRule(NamedTuple):
    lhs: BinaryTree
    rhs: BinaryTree

    @property
    def arity(self):
        return self.lhs.arity

    @property
    def degree(self):
        return max(self.lhs.degree, self.rhs.degree)

    def __str__(self):
        return f"{self.lhs.word} -> {self.rhs.word}"


def make_rule(lhs, rhs):
    """
    Build a validated rule.

    Args:
        lhs, rhs: Trees or prefix words of equal arity ≥ 2
    """
    if isinstance(lhs, str):
        lhs = parse_tree(lhs)
    if isinstance(rhs, str):
        rhs = parse_tree(rhs)
    if lhs.arity != rhs.arity:
        raise ValueError(f"rule {lhs.word} -> {rhs.word}: arities {lhs.arity} and {rhs.arity} differ")
    if lhs.arity < 2:
        raise ValueError("rule members must have arity at least 2")
    if lhs == rhs:
        raise ValueError(f"rule {lhs.word} -> {rhs.word}: members are equal")
    return RewriteRule(lhs, rhs)


class RewriteSystem:
    """
    An ordered, duplicate-free list of rewrite rules.

    `truncated` marks a finite truncation of a conceptually infinite family;
    its degree is then only the degree of the truncation.
    """

    def __init__(self, rules=(), name="", truncated=False):
        self.name = name
        self.truncated = truncated
        self._rules = []
        seen = set()
        for rule in rules:
            if not isinstance(rule, RewriteRule):
                rule = make_rule(*rule)
            key = (rule.lhs.word, rule.rhs.word)
            if key in seen:
                continue
            seen.add(key)
            self._rules.append(rule)

    @property
    def rules(self):
        return tuple(self._rules)

    @property
    def degree(self):
        return max((rule.degree for rule in self._rules), default=0)

    @property
    def lhs_trees(self):
        return [rule.lhs for rule in self._rules]

    def __iter__(self):
        return iter(self._rules)

    def __len__(self):
        return len(self._rules)

    def __contains__(self, rule):
        return rule in self._rules

    def __eq__(self, other):
        return isinstance(other, RewriteSystem) and self._rules == other._rules

    def rule_counts(self):
        """Number of rules per arity of their members."""
        counts = collections.Counter(rule.arity for rule in self._rules)
        return dict(sorted(counts.items()))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<RewriteSystem{label} with {len(self._rules)} rules>"


# =============================================================================
# Text Format
# =============================================================================

def parse_rules(text, name=""):
    """Parse `LHS -> RHS` lines; `#` starts a comment."""
    rules = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise ValueError(f"line {number}: expected 'LHS -> RHS', got {line!r}")
        lhs, rhs = (part.strip() for part in line.split("->", 1))
        try:
            rules.append(make_rule(lhs, rhs))
        except ValueError as e:
            raise ValueError(f"line {number}: {e}") from e
    return RewriteSystem(rules, name=name)


def format_rules(system):
    """Render a system in the `LHS -> RHS` text format."""
    lines = [f"# {system.name}"] if system.name else []
    lines += [str(rule) for rule in system]
    return "\n".join(lines) + "\n"


def parse_congruence(text):
    """Parse `LHS ~ RHS` lines into unordered generator pairs."""
    pairs = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "~" not in line:
            raise ValueError(f"line {number}: expected 'LHS ~ RHS', got {line!r}")
        lhs, rhs = (parse_tree(part) for part in line.split("~", 1))
        if lhs.arity != rhs.arity:
            raise ValueError(f"line {number}: members have different arities")
        pairs.append((lhs, rhs))
    return pairs


# =============================================================================
# Induced Relation
# =============================================================================

def _rewrite_steps(rules, t):
    """Yield (position, rule, result) for every one-step rewrite of t."""
    for position, current in subtrees(t):
        if current.is_leaf:
            continue
        for rule in rules:
            subs = match_at(rule.lhs, current)
            if subs is not None:
                yield position, rule, replace_at(t, position, complete_graft(rule.rhs, subs))


def one_step_rewrites(sys, t):
    """All trees obtained from t by rewriting one lhs occurrence."""
    return {result for _, _, result in _rewrite_steps(sys, t)}


def is_lex_decreasing(sys):
    """True if every rule has lhs > rhs in lex order."""
    return all(lex_compare(rule.lhs, rule.rhs) > 0 for rule in sys)


def mirror_lex_compare(t1, t2):
    """Lex comparison of the mirrored trees."""
    return lex_compare(mirror(t1), mirror(t2))


def is_mirror_lex_decreasing(sys):
    """True if every rule decreases in the lex order of mirrored trees."""
    return all(mirror_lex_compare(rule.lhs, rule.rhs) > 0 for rule in sys)


def termination_order(sys):
    """
    A well-founded order every rule decreases in.

    Returns:
        "lex", "mirror-lex", or None when neither applies
    """
    if is_lex_decreasing(sys):
        return LEX
    if is_mirror_lex_decreasing(sys):
        return MIRROR_LEX
    return None


def require_termination(sys):
    """Raise TerminationError unless termination is certified."""
    order = termination_order(sys)
    if order is None:
        raise TerminationError("rewrite system is not decreasing in lex or mirror-lex order")
    return order


def first_redex(rules, t):
    for position, current in subtrees(t):
        if current.is_leaf:
            continue
        for rule in rules:
            subs = match_at(rule.lhs, current)
            if subs is not None:
                return position, rule, subs
    return None


def reduce_tree(rules, t, cache=None):
    """
    Normal form under the deterministic strategy, without a termination check.

    Rewrites the occurrence with the smallest anchor in prefix order,
    using the first matching rule in list order.
    """
    if cache is not None and t.word in cache:
        return cache[t.word]
    start = t
    while True:
        step = first_redex(rules, t)
        if step is None:
            break
        position, rule, subs = step
        t = replace_at(t, position, complete_graft(rule.rhs, subs))
    if cache is not None:
        cache[start.word] = t
    return t


def normal_form(sys, t):
    """
    Deterministic normal form of t.

    The system must be decreasing in lex or in mirror-lex order; mixed
    orientations are refused.

    Raises:
        TerminationError if the system is not decreasing in either order
    """
    require_termination(sys)
    return reduce_tree(sys.rules, t)


def is_normal(sys, t):
    """True if no lhs occurs in t."""
    return first_redex(sys.rules, t) is None


# =============================================================================
# Branching Analysis
# =============================================================================

class BranchingPair(NamedTuple):
    tree: BinaryTree
    first: BinaryTree
    second: BinaryTree


def tree_branching_pairs(sys, t):
    """All unordered pairs of distinct one-step results of t, sorted."""
    results = sorted(one_step_rewrites(sys, t))
    return [BranchingPair(t, a, b) for a, b in combinations(results, 2)]


def branching_pairs(sys, max_degree):
    """
    Every branching pair of every tree of degree ≤ max_degree.

    Raises:
        BudgetExceeded above the enumeration budget
    """
    if len(sys) == 0:
        return []
    check_budget("branching_pairs", max_degree + 1)
    pairs = []
    for degree in range(1, max_degree + 1):
        for t in iter_trees(degree + 1):
            pairs.extend(tree_branching_pairs(sys, t))
    return pairs


def _superpose(a, b):
    """Smallest tree shape containing both patterns at its root."""
    if a.is_leaf:
        return b
    if b.is_leaf:
        return a
    return BinaryTree(_superpose(a.left, b.left), _superpose(a.right, b.right))


def critical_trees(sys, max_degree=None):
    """
    Minimal branching trees from overlapping two lhs occurrences.

    A critical tree is a lhs with a second lhs superposed at one of its
    internal nodes. Branchings without shared internal nodes always join,
    so confluence only needs these trees.

    Returns:
        Trees sorted by (degree, word)
    """
    found = {}
    rules = list(sys)
    for first in rules:
        for position, current in subtrees(first.lhs):
            if current.is_leaf:
                continue
            for second in rules:
                if position == 0 and second == first:
                    continue
                tree = replace_at(first.lhs, position, _superpose(current, second.lhs))
                if max_degree is None or tree.degree <= max_degree:
                    found[tree.word] = tree
    return sorted(found.values(), key=lambda t: (t.degree, t.word))


# =============================================================================
# Convergence Certificates
# =============================================================================

@dataclass
class ConvergenceCertificate:
    """All branching pairs up to `bound` join."""
    bound: int
    mode: str
    order: str
    checked_per_degree: Dict[int, int] = field(default_factory=dict)

    ok = True

    def __bool__(self):
        return True

    def to_dict(self):
        return {
            "convergent": True,
            "bound": self.bound,
            "mode": self.mode,
            "order": self.order,
            "checked_per_degree": {str(d): c for d, c in sorted(self.checked_per_degree.items())},
        }


@dataclass
class ConvergenceCounterexample:
    """A branching pair whose members have distinct normal forms."""
    pair: BranchingPair
    first_normal_form: BinaryTree
    second_normal_form: BinaryTree

    ok = False

    def __bool__(self):
        return False

    def to_dict(self):
        return {
            "convergent": False,
            "tree": self.pair.tree.word,
            "pair": [self.pair.first.word, self.pair.second.word],
            "normal_forms": [self.first_normal_form.word, self.second_normal_form.word],
        }


def certify_convergence(sys, bound=None, mode="critical"):
    """
    Check joinability of branching pairs up to a degree bound.

    Args:
        sys: Finite rewrite system decreasing in lex or mirror-lex order
        bound: Degree bound, default 2·deg - 1
        mode: "critical" checks critical trees; "exhaustive" scans every tree

    Returns:
        ConvergenceCertificate or the first ConvergenceCounterexample
    """
    order = require_termination(sys)
    if sys.truncated:
        raise ValueError("cannot certify a truncated infinite system")
    if bound is None:
        bound = max(2 * sys.degree - 1, 0)
    rules = sys.rules
    cache = {}
    certificate = ConvergenceCertificate(bound, mode, order)

    if mode == "critical":
        trees = critical_trees(sys, bound)
    elif mode == "exhaustive":
        check_budget("certify_convergence", bound + 1, config.CERTIFY_EXHAUSTIVE_MAX_DEGREE + 1)
        trees = (t for degree in range(1, bound + 1) for t in iter_trees(degree + 1))
    else:
        raise ValueError(f"unknown certification mode {mode!r}")

    for t in trees:
        for pair in tree_branching_pairs(sys, t):
            first = reduce_tree(rules, pair.first, cache)
            second = reduce_tree(rules, pair.second, cache)
            if first != second:
                return ConvergenceCounterexample(pair, first, second)
            certificate.checked_per_degree[t.degree] = certificate.checked_per_degree.get(t.degree, 0) + 1
    return certificate


# =============================================================================
# Normal Form Counting
# =============================================================================

def avoids_all(t, patterns):
    """True if no pattern occurs in t."""
    for _, current in subtrees(t):
        if current.is_leaf:
            continue
        for pattern in patterns:
            if match_at(pattern, current) is not None:
                return False
    return True


def filtered_avoiders(patterns, n):
    """Arity-n trees avoiding every pattern, by direct filtering."""
    check_budget("filtered_avoiders", n)
    return [t for t in iter_trees(n) if avoids_all(t, patterns)]


def normal_form_counts(sys, n_max):
    """
    Per-arity counts of trees avoiding every lhs.

    Direct filtering up to DIRECT_FILTER_MAX_ARITY, the avoidance automaton above.
    """
    from quotients import avoider_count

    patterns = sys.lhs_trees
    table = ArityTable(f"normal forms {sys.name}".strip())
    if not patterns:
        for n in range(1, n_max + 1):
            table[n] = catalan(n - 1)
        return table
    small = min(n_max, config.DIRECT_FILTER_MAX_ARITY)
    for n in range(1, small + 1):
        table[n] = len(filtered_avoiders(patterns, n))
    if n_max > small:
        automaton_counts = avoider_count(patterns, n_max)
        for n in range(small + 1, n_max + 1):
            table[n] = automaton_counts[n]
    return table


# =============================================================================
# Congruence Oracle (Union-Find)
# =============================================================================

class DisjointSet:
    """Union-find keyed on prefix words, with path compression and union by rank."""

    def __init__(self):
        self.parent = {}
        self.rank = {}

    def make_set(self, e):
        if e in self.parent:
            return
        self.parent[e] = e
        self.rank[e] = 0

    # find with path compression
    def find(self, e):
        self.make_set(e)
        root = e
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[e] != root:
            self.parent[e], e = root, self.parent[e]
        return root

    # union by rank
    def union(self, x, y):
        x_root = self.find(x)
        y_root = self.find(y)
        if x_root == y_root:
            return
        if self.rank[x_root] < self.rank[y_root]:
            x_root, y_root = y_root, x_root
        self.parent[y_root] = x_root
        if self.rank[x_root] == self.rank[y_root]:
            self.rank[x_root] += 1

    def sets(self):
        groups = collections.defaultdict(set)
        for e in self.parent:
            groups[self.find(e)].add(e)
        return frozenset(frozenset(s) for s in groups.values())

    def sorted(self):
        """Sorted tuple of sorted tuples edition of sets()."""
        return tuple(sorted(tuple(sorted(s)) for s in self.sets()))


@dataclass
class CongruencePartition:
    """Classes of the congruence generated by tree pairs, at one arity."""
    arity: int
    disjoint_set: DisjointSet

    @property
    def class_count(self):
        return len({self.disjoint_set.find(e) for e in self.disjoint_set.parent})

    def classes(self):
        """Classes as sorted tuples of prefix words."""
        return self.disjoint_set.sorted()

    def same_class(self, t1, t2):
        return self.disjoint_set.find(t1.word) == self.disjoint_set.find(t2.word)


def _as_pairs(rules):
    pairs = []
    for item in rules:
        lhs, rhs = (item.lhs, item.rhs) if isinstance(item, RewriteRule) else item
        if isinstance(lhs, str):
            lhs = parse_tree(lhs)
        if isinstance(rhs, str):
            rhs = parse_tree(rhs)
        if lhs.arity != rhs.arity:
            raise ValueError(f"pair {lhs.word} ~ {rhs.word}: arities differ")
        if lhs.arity < 2:
            raise ValueError("congruence generators must have arity at least 2")
        pairs.append((lhs, rhs))
    return pairs


def congruence_classes(rules, n):
    """
    Brute-force classes of the operad congruence generated by tree pairs.

    Every arity-n tree is visited once; each occurrence of a pair member
    links the tree to its rewrite. Linking in one direction suffices since
    the reverse step is found from the other end.

    Args:
        rules: Unordered pairs of trees (or RewriteRules)
        n: Arity

    Raises:
        BudgetExceeded above MAX_ENUM_ARITY
    """
    check_budget("congruence_classes", n)
    pairs = _as_pairs(rules)
    disjoint_set = DisjointSet()
    oriented = [RewriteRule(lhs, rhs) for lhs, rhs in pairs]
    for t in iter_trees(n):
        disjoint_set.make_set(t.word)
        for _, _, result in _rewrite_steps(oriented, t):
            disjoint_set.union(t.word, result.word)
    return CongruencePartition(n, disjoint_set)


def mirror_system(sys):
    """Mirror both members of every rule."""
    return RewriteSystem(
        [RewriteRule(mirror(rule.lhs), mirror(rule.rhs)) for rule in sys],
        name=f"mirror({sys.name})" if sys.name else "",
        truncated=sys.truncated,
    )


def symmetrized(sys):
    """The unordered generator pairs of a system."""
    return [(rule.lhs, rule.rhs) for rule in sys]
