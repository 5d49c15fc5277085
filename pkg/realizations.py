"""
Combinatorial realizations of quotients of Mag
Integer-composition operads for pairs of cubic trees, their mirrors,
the γ-right-comb operad, and isomorphism checks against normal forms
"""

from dataclasses import dataclass
from itertools import product
from typing import Callable, Tuple

import numpy as np

import config
from rewriting import RewriteRule, RewriteSystem, filtered_avoiders, reduce_tree
from trees import (
    LEAF, BinaryTree, catalan, cubic_tree, enumerate_trees, graft,
    left_comb, mirror, right_comb,
)

EMPTY = ()

# =============================================================================
# Compositions
# =============================================================================

def composition_arity(parts):
    """1 + the sum of the parts; ε has arity 1."""
    return 1 + sum(parts)


def make_composition(parts):
    parts = tuple(int(p) for p in parts)
    if any(p < 1 for p in parts):
        raise ValueError(f"composition parts must be positive, got {parts}")
    return parts


def parse_composition(text):
    """Parse `(1,2,1)`; `()` is ε."""
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"composition {text!r} must be parenthesized")
    inner = body[1:-1].strip()
    if not inner:
        return EMPTY
    try:
        return make_composition(int(part) for part in inner.split(","))
    except ValueError as e:
        raise ValueError(f"composition {text!r}: {e}") from e


def format_composition(parts):
    return "(" + ",".join(str(p) for p in parts) + ")"


def compositions_of_arity(n):
    """All compositions of arity n (compositions of n - 1), in lex order."""
    if n < 1:
        raise ValueError(f"arity must be at least 1, got {n}")
    total = n - 1
    if total == 0:
        return [EMPTY]
    result = []
    # a cut after each of the first total - 1 units
    for cuts in product((False, True), repeat=total - 1):
        parts, run = [], 1
        for cut in cuts:
            if cut:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        result.append(tuple(parts))
    return sorted(result)


def s_value(parts, i, j):
    """
    s_{i,j}(λ) = 1 + Σ_{i ≤ k ≤ j} λ_k; 1 on an empty range.
    """
    if i < 1 or j > len(parts):
        raise ValueError(f"range {i}..{j} out of bounds for {format_composition(parts)}")
    return 1 + sum(parts[i - 1:j])


def _check_position(parts, i):
    n = composition_arity(parts)
    if not 1 <= i <= n:
        raise ValueError(f"position {i} out of range 1..{n}")
    return n


def _locate(parts, i):
    """k with s_{1,k} ≤ i < s_{1,k+1}, and s_{1,k}."""
    start = 1
    for k, part in enumerate(parts):
        if start <= i < start + part:
            return k, start
        start += part
    raise ValueError(f"position {i} is the last position")


# =============================================================================
# Composition Maps
# =============================================================================

def comp_12(lam, i, mu):
    """Bump the part containing position i, or concatenate at the last position."""
    n = _check_position(lam, i)
    if not mu:
        return tuple(lam)
    if i == n:
        return tuple(lam) + tuple(mu)
    k, _ = _locate(lam, i)
    m = composition_arity(mu)
    parts = list(lam)
    parts[k] += m - 1
    return tuple(parts)


def comp_13(lam, i, mu):
    """Absorb the tail of λ into μ's head, or bump a part through a trailing leaf."""
    _check_position(lam, i)
    if not mu:
        return tuple(lam)
    p = len(lam)
    m = composition_arity(mu)
    if i <= p + 1:
        head = mu[0] + sum(lam[i - 1:])
        return tuple(lam[:i - 1]) + (head,) + tuple(mu[1:])
    position = p + 2
    for k in range(p - 1, -1, -1):
        width = lam[k] - 1
        if position <= i < position + width:
            parts = list(lam)
            parts[k] += m - 1
            return tuple(parts)
        position += width
    raise ValueError(f"position {i} not reached in {format_composition(lam)}")


def comp_24(lam, i, mu):
    """Splice μ into λ, merging μ's last part with the rest of the split part."""
    n = _check_position(lam, i)
    if not mu:
        return tuple(lam)
    if i == n:
        return tuple(lam) + tuple(mu)
    k, start = _locate(lam, i)
    before, after = tuple(lam[:k]), tuple(lam[k + 1:])
    if i == start:
        return before + tuple(mu[:-1]) + (mu[-1] + lam[k],) + after
    end = start + lam[k]
    return before + (i - start,) + tuple(mu[:-1]) + (mu[-1] + end - i,) + after


def comp_25(lam, i, mu):
    """Splice μ into λ; whether the split part merges depends on the parity of len(μ)."""
    n = _check_position(lam, i)
    if not mu:
        return tuple(lam)
    if i == n:
        return tuple(lam) + tuple(mu)
    k, start = _locate(lam, i)
    before, after = tuple(lam[:k]), tuple(lam[k + 1:])
    end = start + lam[k]
    if len(mu) % 2 == 1:
        if i == start:
            return before + tuple(mu[:-1]) + (mu[-1] + lam[k],) + after
        return before + (i - start,) + tuple(mu) + (end - i,) + after
    if i == start:
        return before + tuple(mu) + (lam[k],) + after
    return before + (i - start,) + tuple(mu[:-1]) + (mu[-1] + end - i,) + after


def mirrored_compose(op, lam, i, mu):
    """x ∘̄_i y = x ∘_{|x|-i+1} y."""
    n = _check_position(lam, i)
    return op(lam, n - i + 1, mu)


def mirrored(op):
    """The mirrored composition as a function."""
    def composed(lam, i, mu):
        return mirrored_compose(op, lam, i, mu)
    composed.__name__ = f"mirrored_{op.__name__}"
    return composed


# =============================================================================
# Normal Forms and φ Maps
# =============================================================================

def left_comb_forest(parts):
    """ℒ(λ) = ℛ_p ∘ [ℒ_{λ_1-1}, ..., ℒ_{λ_p-1}, ℓ]."""
    tree = LEAF
    for part in reversed(parts):
        tree = BinaryTree(left_comb(part - 1), tree)
    return tree


def phi_left_comb_forest(t):
    """
    Inverse of ℒ(λ): walk the right spine, reading left combs.

    Raises:
        ValueError if t is not of the form ℒ(λ) (equivalently, contains a4)
    """
    parts = []
    current = t
    while not current.is_leaf:
        left = current.left
        degree = left.degree
        if left.word != "2" * degree + "0" * (degree + 1):
            raise ValueError(f"{t.word} is not a right spine of left combs")
        parts.append(degree + 1)
        current = current.right
    return tuple(parts)


def lightning(parts):
    """ℒ_{λ_1} ∘_2 (ℒ_{λ_2} ∘_2 (... ℒ_{λ_p}))."""
    if not parts:
        return LEAF
    tree = left_comb(parts[-1])
    for part in reversed(parts[:-1]):
        tree = graft(left_comb(part), 2, tree)
    return tree


def phi_lightning(t):
    """
    Inverse of the lightning map.

    Raises:
        ValueError if some node has two internal children
    """
    if t.is_leaf:
        return EMPTY
    parts = []
    count = 1
    current = t
    while True:
        left_internal = not current.left.is_leaf
        right_internal = not current.right.is_leaf
        if left_internal and right_internal:
            raise ValueError(f"{t.word} is not a lightning tree")
        if left_internal:
            count += 1
            current = current.left
        elif right_internal:
            parts.append(count)
            count = 1
            current = current.right
        else:
            parts.append(count)
            return tuple(parts)


def mirrored_phi(phi):
    def composed(t):
        return phi(mirror(t))
    composed.__name__ = f"mirrored_{phi.__name__}"
    return composed


# =============================================================================
# Generator Morphism
# =============================================================================

def generator_morphism(op, t):
    """
    Image of t under the morphism Mag -> (compositions, op) sending the generator to (1).

    ψ(ℓ) = ε and ψ((A, B)) = ((1) ∘_2 ψ(B)) ∘_1 ψ(A).
    """
    if t.is_leaf:
        return EMPTY
    return op(op((1,), 2, generator_morphism(op, t.right)), 1, generator_morphism(op, t.left))


def realized_pair(op):
    """
    The pair {i, j} of cubic trees identified by the morphism, or None.

    Returns:
        (i, j) with i < j if exactly one pair of cubic trees collides
    """
    images = [generator_morphism(op, cubic_tree(k)) for k in range(1, 6)]
    pairs = [
        (a + 1, b + 1)
        for a in range(5) for b in range(a + 1, 5)
        if images[a] == images[b]
    ]
    return pairs[0] if len(pairs) == 1 else None


# =============================================================================
# Realization Table
# =============================================================================

@dataclass(frozen=True)
class Realization:
    """A composition operad with the quotient it realizes."""
    name: str
    op: Callable
    pair: Tuple[int, int]
    rule: Tuple[int, int]  # cubic indices (lhs, rhs) of the convergent rule
    phi: Callable

    def system(self):
        lhs, rhs = self.rule
        return RewriteSystem([RewriteRule(cubic_tree(lhs), cubic_tree(rhs))], name=f"mag:{self.pair[0]},{self.pair[1]}")


REALIZATIONS = [
    Realization("comp_12", comp_12, (4, 5), (4, 5), phi_left_comb_forest),
    Realization("mirrored comp_12", mirrored(comp_12), (1, 2), (2, 1), mirrored_phi(phi_left_comb_forest)),
    Realization("comp_13", comp_13, (3, 5), (3, 5), phi_lightning),
    Realization("mirrored comp_13", mirrored(comp_13), (1, 3), (3, 1), mirrored_phi(phi_lightning)),
    Realization("comp_25", comp_25, (1, 4), (4, 1), phi_left_comb_forest),
    Realization("mirrored comp_25", mirrored(comp_25), (2, 5), (2, 5), mirrored_phi(phi_left_comb_forest)),
    Realization("comp_24", comp_24, (2, 4), (4, 2), phi_left_comb_forest),
    Realization("mirrored comp_24", mirrored(comp_24), (2, 4), (2, 4), mirrored_phi(phi_left_comb_forest)),
]


def realization(name):
    for entry in REALIZATIONS:
        if entry.name == name:
            return entry
    raise ValueError(f"unknown realization {name!r}")


# =============================================================================
# Checks
# =============================================================================

def operad_axiom_failure(op, max_total_arity):
    """
    Exhaustively test the operad axioms on compositions.

    Returns:
        None, or a description of the first failing instance
    """
    by_arity = {n: compositions_of_arity(n) for n in range(1, max_total_arity + 1)}
    for n in range(1, max_total_arity + 1):
        for x in by_arity[n]:
            if op(x, 1, EMPTY) != x or any(op(x, i, EMPTY) != x for i in range(1, n + 1)):
                return f"unit fails on {format_composition(x)}"
            if op(EMPTY, 1, x) != x:
                return f"left unit fails on {format_composition(x)}"
    for nx in range(2, max_total_arity + 1):
        for ny in range(2, max_total_arity - nx + 2):
            for nz in range(2, max_total_arity - nx - ny + 3):
                for x, y, z in product(by_arity[nx], by_arity[ny], by_arity[nz]):
                    for i in range(1, nx + 1):
                        xy = op(x, i, y)
                        for j in range(1, ny + 1):
                            if op(xy, i + j - 1, z) != op(x, i, op(y, j, z)):
                                return f"sequential axiom fails on {x} ∘{i} {y} ∘{j} {z}"
                        for j in range(i + 1, nx + 1):
                            if op(xy, j + ny - 1, z) != op(op(x, j, z), i, y):
                                return f"parallel axiom fails on {x} ∘{i} {y}, ∘{j} {z}"
    return None


def random_axiom_failure(op, samples, max_arity, seed=None):
    """Seeded random instances of the sequential and parallel axioms."""
    rng = np.random.default_rng(config.RANDOM_SEED if seed is None else seed)

    def random_composition():
        n = int(rng.integers(2, max_arity + 1))
        cuts = rng.integers(0, 2, size=n - 2)
        parts, run = [], 1
        for cut in cuts:
            if cut:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        return tuple(parts)

    for _ in range(samples):
        x, y, z = random_composition(), random_composition(), random_composition()
        nx, ny = composition_arity(x), composition_arity(y)
        i = int(rng.integers(1, nx + 1))
        j = int(rng.integers(1, ny + 1))
        if op(op(x, i, y), i + j - 1, z) != op(x, i, op(y, j, z)):
            return f"sequential axiom fails on {x} ∘{i} {y} ∘{j} {z}"
        if nx >= 2:
            a, b = sorted(rng.choice(np.arange(1, nx + 1), size=2, replace=False))
            a, b = int(a), int(b)
            if op(op(x, a, y), b + ny - 1, z) != op(op(x, b, z), a, y):
                return f"parallel axiom fails on {x} ∘{a} {y}, ∘{b} {z}"
    return None


def intertwining_failure(entry, max_total_arity):
    """
    Check φ(nf(t ∘_i t')) = φ(t) ∘_i φ(t') over normal-form pairs.

    Returns:
        None, or a description of the first failing instance
    """
    system = entry.system()
    rules = system.rules
    cache = {}
    normal = {n: filtered_avoiders(system.lhs_trees, n) for n in range(1, max_total_arity + 1)}
    for n in range(1, max_total_arity + 1):
        for m in range(1, max_total_arity - n + 2):
            for t in normal[n]:
                phi_t = entry.phi(t)
                for u in normal[m]:
                    phi_u = entry.phi(u)
                    for i in range(1, n + 1):
                        result = reduce_tree(rules, graft(t, i, u), cache)
                        if entry.phi(result) != entry.op(phi_t, i, phi_u):
                            return f"{entry.name}: {t.word} ∘{i} {u.word}"
    return None


def non_isomorphism_witnesses(max_arity=4):
    """
    For every two realizations of different quotients, a triple on which
    their compositions disagree.

    Returns:
        {(name, name): (λ, i, μ)}
    """
    triples = []
    for n in range(1, max_arity + 1):
        for m in range(1, max_arity - n + 2):
            for lam in compositions_of_arity(n):
                for mu in compositions_of_arity(m):
                    for i in range(1, n + 1):
                        triples.append((lam, i, mu))
    witnesses = {}
    for a in range(len(REALIZATIONS)):
        for b in range(a + 1, len(REALIZATIONS)):
            first, second = REALIZATIONS[a], REALIZATIONS[b]
            if first.pair == second.pair:
                continue
            for lam, i, mu in triples:
                if first.op(lam, i, mu) != second.op(lam, i, mu):
                    witnesses[(first.name, second.name)] = (lam, i, mu)
                    break
    return witnesses


# =============================================================================
# γ-Right-Comb Operad
# =============================================================================

def rc_compose(gamma, t1, i, t2):
    """Graft when the result has arity ≤ γ, otherwise the right comb of that arity."""
    if not 1 <= i <= t1.arity:
        raise ValueError(f"leaf index {i} out of range 1..{t1.arity}")
    n = t1.arity + t2.arity - 1
    if n <= gamma:
        return graft(t1, i, t2)
    return right_comb(n - 1)


def rc_projection(gamma, t):
    """Image of a tree in RC(γ)."""
    return t if t.arity <= gamma else right_comb(t.arity - 1)


def rc_generators_pairs(gamma):
    """{t ~ ℛ_γ : t of arity γ + 1}."""
    target = right_comb(gamma)
    return [(t, target) for t in enumerate_trees(gamma + 1) if t != target]


def rc_hilbert(gamma, n_max):
    """Σ_{n ≤ γ} cat(n-1) tⁿ + Σ_{n > γ} tⁿ, as a list of coefficients."""
    return [catalan(n - 1) if n <= gamma else 1 for n in range(1, n_max + 1)]
