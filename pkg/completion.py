"""
Buchberger-style completion of rewrite systems on binary trees
Deterministic worklist, arity and step budgets, traces, and the
backtracking search over rule orientations
"""

import time
from collections import deque
from dataclasses import dataclass, field
from typing import List, Optional

import config
from rewriting import (
    LEX, BranchingPair, RewriteRule, RewriteSystem, certify_convergence,
    critical_trees, lex_compare, mirror_lex_compare,
    normal_form_counts, one_step_rewrites, reduce_tree, require_termination,
    termination_order, tree_branching_pairs, first_redex,
)
from tables import ArityTable
from trees import complete_graft, replace_at

COMPLETED = "completed"
BUDGET_EXHAUSTED = "budget_exhausted"

# =============================================================================
# Trace
# =============================================================================

@dataclass
class AddedRule:
    """A rule added while joining a branching pair."""
    rule: RewriteRule
    provenance: BranchingPair


@dataclass
class CompletionTrace:
    """
    History and result of a completion run.

    Attributes:
        initial_rules: Input system
        added_rules: Rules added, in order, with the branching pair that produced them
        removed_rules: Rules dropped by the final inter-reduction
        final_rules: Completed (or partial) system
        per_arity_counts: Rules of final_rules per member arity
        status: "completed" or "budget_exhausted"
        complete_through_arity: Every branching tree up to this arity joins
        order: Termination order the added rules decrease in
    """
    initial_rules: RewriteSystem
    added_rules: List[AddedRule] = field(default_factory=list)
    removed_rules: List[RewriteRule] = field(default_factory=list)
    final_rules: Optional[RewriteSystem] = None
    per_arity_counts: Optional[ArityTable] = None
    status: str = COMPLETED
    complete_through_arity: Optional[int] = None
    max_arity: int = 0
    order: Optional[str] = LEX
    reason: str = ""
    wall_time: float = 0.0

    @property
    def completed(self):
        return self.status == COMPLETED

    def to_dict(self):
        return {
            "initial_rules": [str(rule) for rule in self.initial_rules],
            "added_rules": [
                {"rule": str(added.rule), "provenance": added.provenance.tree.word,
                 "pair": [added.provenance.first.word, added.provenance.second.word]}
                for added in self.added_rules
            ],
            "removed_rules": [str(rule) for rule in self.removed_rules],
            "final_rules": [str(rule) for rule in self.final_rules] if self.final_rules else [],
            "per_arity_counts": self.per_arity_counts.as_list() if self.per_arity_counts else [],
            "status": self.status,
            "complete_through_arity": self.complete_through_arity,
            "order": self.order,
            "reason": self.reason,
            "wall_time": round(self.wall_time, 3),
        }


def _orient(a, b, order):
    """Return (larger, smaller) under the termination order."""
    compare = lex_compare if order == LEX else mirror_lex_compare
    return (a, b) if compare(a, b) > 0 else (b, a)


def _rule_counts(system, n_max):
    table = ArityTable("rules per arity", {n: 0 for n in range(1, n_max + 1)})
    for arity, count in system.rule_counts().items():
        table[arity] = count
    return table


def reduce_system(rules):
    """
    Inter-reduce a convergent rule list.

    Drops every rule whose lhs is reducible by the remaining rules, then
    renormalizes right members.

    Returns:
        (kept rules, removed rules)
    """
    kept = list(rules)
    removed = []
    changed = True
    while changed:
        changed = False
        for rule in list(kept):
            others = [other for other in kept if other is not rule]
            if first_redex(others, rule.lhs) is not None:
                kept.remove(rule)
                removed.append(rule)
                changed = True
                break
    cache = {}
    kept = [RewriteRule(rule.lhs, reduce_tree(kept, rule.rhs, cache)) for rule in kept]
    return kept, removed


# =============================================================================
# Buchberger Completion
# =============================================================================

def _join_level(rules, arity, order, trace, max_steps):
    """
    Join every critical pair of the given arity, adding rules until stable.

    Returns:
        False if the step budget ran out
    """
    while True:
        added_here = False
        cache = {}
        system = RewriteSystem(rules)
        for tree in critical_trees(system):
            if tree.arity != arity:
                continue
            for pair in tree_branching_pairs(system, tree):
                first = reduce_tree(rules, pair.first, cache)
                second = reduce_tree(rules, pair.second, cache)
                if first == second:
                    continue
                if len(trace.added_rules) >= max_steps:
                    return False
                lhs, rhs = _orient(first, second, order)
                rule = RewriteRule(lhs, rhs)
                rules.append(rule)
                trace.added_rules.append(AddedRule(rule, pair))
                added_here = True
                cache = {}
                system = RewriteSystem(rules)
        if not added_here:
            return True


def _overlaps_join(rules, min_arity, reduce=reduce_tree):
    """First non-joinable pair among critical trees of arity ≥ min_arity, or None."""
    system = RewriteSystem(rules)
    bound = max(2 * system.degree - 1, 0)
    cache = {}
    for tree in critical_trees(system, bound):
        if tree.arity < min_arity:
            continue
        for pair in tree_branching_pairs(system, tree):
            if reduce(rules, pair.first, cache) != reduce(rules, pair.second, cache):
                return pair
    return None


def buchberger_complete(sys, max_arity=None, max_steps=None):
    """
    Complete a terminating rewrite system.

    Critical trees are processed arity by arity, in ascending (degree, lex)
    order, pairs in lex order of their members. A non-joinable pair adds the
    rule max -> min of its normal forms. A level is repeated until it adds
    nothing. Overlaps above max_arity are only tested for joinability.

    Args:
        sys: System decreasing in lex (or mirror-lex) order
        max_arity: Largest arity of a processed branching tree
        max_steps: Largest number of added rules

    Returns:
        CompletionTrace
    """
    order = require_termination(sys)
    max_arity = config.COMPLETION_MAX_ARITY if max_arity is None else max_arity
    max_steps = config.COMPLETION_MAX_STEPS if max_steps is None else max_steps
    started = time.perf_counter()
    trace = CompletionTrace(initial_rules=sys, max_arity=max_arity, order=order)
    rules = list(sys.rules)

    complete_through = max_arity
    for arity in range(3, max_arity + 1):
        if not _join_level(rules, arity, order, trace, max_steps):
            trace.status = BUDGET_EXHAUSTED
            trace.reason = f"step budget {max_steps} reached at arity {arity}"
            complete_through = arity - 1
            break

    if trace.status == COMPLETED:
        pending = _overlaps_join(rules, max_arity + 1)
        if pending is not None:
            trace.status = BUDGET_EXHAUSTED
            trace.reason = f"non-joinable branching at arity {pending.tree.arity} beyond max_arity {max_arity}"
        else:
            complete_through = None

    if trace.status == COMPLETED:
        rules, trace.removed_rules = reduce_system(rules)
    trace.final_rules = RewriteSystem(rules, name=sys.name)
    top = max([max_arity] + [rule.arity for rule in rules])
    trace.per_arity_counts = _rule_counts(trace.final_rules, top)
    trace.complete_through_arity = complete_through
    trace.wall_time = time.perf_counter() - started
    return trace


def replay_trace(trace):
    """
    Re-derive the added rules from their provenance pairs.

    Returns:
        (success, message)
    """
    rules = list(trace.initial_rules.rules)
    order = trace.order or LEX
    for index, added in enumerate(trace.added_rules):
        first = reduce_tree(rules, added.provenance.first)
        second = reduce_tree(rules, added.provenance.second)
        if first == second:
            return False, f"added rule {index} ({added.rule}): pair already joins"
        lhs, rhs = _orient(first, second, order)
        if RewriteRule(lhs, rhs) != added.rule:
            return False, f"added rule {index}: replay gives {lhs.word} -> {rhs.word}, trace has {added.rule}"
        rules.append(added.rule)
    return True, f"{len(trace.added_rules)} added rules replayed"


def dims_from_completion(trace, n_max):
    """
    Normal-form counts under the trace's rules.

    Arities beyond the completed range are flagged as unverified.
    """
    table = normal_form_counts(trace.final_rules, n_max)
    table.label = f"dims from completion {trace.initial_rules.name}".strip()
    if trace.complete_through_arity is not None:
        table.unverified = {n for n in table.values if n > trace.complete_through_arity}
    return table


# =============================================================================
# Backtracking Search
# =============================================================================

class LoopDetected(Exception):
    """The rewrite relation is not antisymmetric."""


def _reduce_watching(rules, t, cache):
    """Deterministic reduction that raises LoopDetected on a repeated tree."""
    if t.word in cache:
        return cache[t.word]
    seen = set()
    start = t
    while True:
        if t.word in seen:
            raise LoopDetected(t.word)
        seen.add(t.word)
        step = first_redex(rules, t)
        if step is None:
            break
        position, rule, subs = step
        t = replace_at(t, position, complete_graft(rule.rhs, subs))
    cache[start.word] = t
    return t


def _reaches(rules, source, target):
    """Breadth-first search for source ->* target."""
    system = RewriteSystem(rules)
    seen = {source.word}
    queue = deque([source])
    while queue:
        current = queue.popleft()
        if current == target:
            return True
        for result in one_step_rewrites(system, current):
            if result.word not in seen:
                seen.add(result.word)
                queue.append(result)
    return False


def _first_unjoinable(rules, max_arity):
    """First non-joinable critical pair of arity ≤ max_arity, with its normal forms."""
    system = RewriteSystem(rules)
    cache = {}
    for tree in critical_trees(system):
        if tree.arity > max_arity:
            continue
        for pair in tree_branching_pairs(system, tree):
            first = _reduce_watching(rules, pair.first, cache)
            second = _reduce_watching(rules, pair.second, cache)
            if first != second:
                return pair, first, second
    return None


@dataclass
class BacktrackReport:
    """
    Outcome of the backtracking search.

    status is "completed", "exhausted" (every orientation assignment fails
    within the arity budget) or "node_budget" (search stopped early).
    """
    status: str
    max_arity: int
    nodes_visited: int
    trace: Optional[CompletionTrace] = None
    certificate: Optional[object] = None
    deepest_rule_count: int = 0

    @property
    def found(self):
        return self.status == COMPLETED

    def to_dict(self):
        data = {
            "status": self.status,
            "max_arity": self.max_arity,
            "nodes_visited": self.nodes_visited,
            "deepest_rule_count": self.deepest_rule_count,
        }
        if self.trace is not None:
            data["trace"] = self.trace.to_dict()
        if self.certificate is not None:
            data["certificate"] = self.certificate.to_dict()
        return data


def backtracking_complete(sys, max_arity=None, max_nodes=None):
    """
    Depth-first search over orientations of non-joinable pairs.

    At each node the first non-joinable critical pair {a, b} (a > b in lex
    order) is oriented a -> b first, then b -> a. A branch is rejected when
    the new rule loops (its rhs rewrites back to its lhs, or a reduction
    revisits a tree) or when an overlap beyond max_arity fails to join.

    Returns:
        BacktrackReport
    """
    max_arity = config.COMPLETION_MAX_ARITY if max_arity is None else max_arity
    max_nodes = config.BACKTRACK_MAX_NODES if max_nodes is None else max_nodes
    started = time.perf_counter()
    report = BacktrackReport("exhausted", max_arity, 0)
    initial = list(sys.rules)

    def search(rules, added):
        if report.nodes_visited >= max_nodes:
            report.status = "node_budget"
            return None
        report.nodes_visited += 1
        report.deepest_rule_count = max(report.deepest_rule_count, len(rules))
        try:
            pending = _first_unjoinable(rules, max_arity)
            if pending is None:
                if _overlaps_join(rules, max_arity + 1, _reduce_watching) is not None:
                    return None
                return rules, added
        except LoopDetected:
            return None
        pair, first, second = pending
        larger, smaller = _orient(first, second, LEX)
        for lhs, rhs in ((larger, smaller), (smaller, larger)):
            if _reaches(rules + [RewriteRule(lhs, rhs)], rhs, lhs):
                continue
            found = search(rules + [RewriteRule(lhs, rhs)], added + [AddedRule(RewriteRule(lhs, rhs), pair)])
            if found is not None:
                return found
            if report.status == "node_budget":
                return None
        return None

    found = search(initial, [])
    if found is not None:
        rules, added = found
        order = termination_order(RewriteSystem(rules))
        trace = CompletionTrace(initial_rules=sys, added_rules=added, max_arity=max_arity, order=order)
        if order is not None:
            rules, trace.removed_rules = reduce_system(rules)
        trace.final_rules = RewriteSystem(rules, name=sys.name)
        trace.per_arity_counts = _rule_counts(trace.final_rules, max([max_arity] + [r.arity for r in rules]))
        trace.wall_time = time.perf_counter() - started
        report.status = COMPLETED
        report.trace = trace
        if order is not None:
            report.certificate = certify_convergence(trace.final_rules)
    return report
