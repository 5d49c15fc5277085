"""
Lattice of comb associative operads CAs(γ)
Division order on barred indices, meet and join, morphism existence,
and the left-rank congruence invariant
"""

from dataclasses import dataclass
from math import gcd, lcm
from typing import Optional

import config
from rewriting import BudgetExceeded, congruence_classes
from trees import catalan, left_comb, left_rank, parse_prefix, right_comb


def _check_index(gamma):
    if not isinstance(gamma, int) or gamma < 1:
        raise ValueError(f"comb index must be an integer ≥ 1, got {gamma!r}")


def bar(gamma):
    """γ̄ = γ - 1."""
    _check_index(gamma)
    return gamma - 1


def _divides(a, b):
    # 0 divides only 0; everything divides 0
    if a == 0:
        return b == 0
    return b % a == 0


# =============================================================================
# Order and Lattice Operations
# =============================================================================

def cas_leq(gamma, gamma_prime):
    """CAs_γ ⪯ CAs_γ' iff γ̄ divides γ̄'. CAs_1 = Mag is the maximum."""
    return _divides(bar(gamma), bar(gamma_prime))


def cas_meet(gamma, gamma_prime):
    """Index whose bar is gcd(γ̄, γ̄')."""
    return gcd(bar(gamma), bar(gamma_prime)) + 1


def cas_join(gamma, gamma_prime):
    """Index whose bar is lcm(γ̄, γ̄'); lcm(0, x) = 0."""
    return lcm(bar(gamma), bar(gamma_prime)) + 1


def first_dimensions(gamma):
    """
    dim CAs_γ(n) for n ≤ γ + 1: cat(n-1), minus one at n = γ + 1.

    Returns:
        List for arities 1..γ+1
    """
    if gamma < 2:
        raise ValueError(f"first dimensions need γ ≥ 2, got {gamma}")
    return [catalan(n - 1) - (1 if n == gamma + 1 else 0) for n in range(1, gamma + 2)]


# =============================================================================
# Oracle Checks
# =============================================================================

def left_rank_invariant_check(gamma, n_max):
    """
    Check that the left rank mod γ̄ is constant on every class of ≡_CAs(γ).

    Returns:
        (success, message)
    """
    if gamma < 2:
        raise ValueError(f"left-rank invariant needs γ ≥ 2, got {gamma}")
    modulus = bar(gamma)
    generators = [(left_comb(gamma), right_comb(gamma))]
    for n in range(1, n_max + 1):
        partition = congruence_classes(generators, n)
        for members in partition.classes():
            residues = {left_rank(parse_prefix(word)) % modulus for word in members}
            if len(residues) > 1:
                return False, f"arity {n}: class of {members[0]} mixes left ranks mod {modulus}"
    return True, f"left rank mod {modulus} constant on classes up to arity {n_max}"


@dataclass
class MorphismCheck:
    """Existence of a morphism CAs_γ' -> CAs_γ decided two ways."""
    gamma_prime: int
    gamma: int
    criterion: bool
    oracle: Optional[bool]

    @property
    def exists(self):
        return self.criterion

    @property
    def agree(self):
        return self.oracle is None or self.oracle == self.criterion

    @property
    def oracle_skipped(self):
        return self.oracle is None

    def __bool__(self):
        return self.exists


def morphism_exists(gamma_prime, gamma, n_check=None):
    """
    Decide whether CAs_γ' -> CAs_γ exists.

    (a) γ̄ divides γ̄'; (b) ℒ_γ' and ℛ_γ' share a class of ≡_CAs(γ) in
    arity γ' + 1. The oracle is skipped above the enumeration budget.
    """
    limit = config.MAX_ENUM_ARITY if n_check is None else n_check
    criterion = _divides(bar(gamma), bar(gamma_prime))
    arity = gamma_prime + 1
    oracle = None
    if arity <= limit:
        try:
            generators = [] if gamma == 1 else [(left_comb(gamma), right_comb(gamma))]
            if left_comb(gamma_prime) == right_comb(gamma_prime):
                oracle = True
            elif not generators:
                oracle = False
            else:
                partition = congruence_classes(generators, arity)
                oracle = partition.same_class(left_comb(gamma_prime), right_comb(gamma_prime))
        except BudgetExceeded:
            oracle = None
    return MorphismCheck(gamma_prime, gamma, criterion, oracle)


def linear_inclusion_check(gamma, gamma_prime, n_max):
    """
    For γ̄ | γ̄', dim I(ℒ_γ' - ℛ_γ')(n) ≤ dim I(ℒ_γ - ℛ_γ)(n) for n ≤ n_max.

    Returns:
        (success, message)
    """
    from linear import comb_difference, ideal_space

    if not cas_leq(gamma, gamma_prime):
        return True, "indices not comparable"
    finer = [comb_difference(gamma_prime)] if gamma_prime > 1 else []
    coarser = [comb_difference(gamma)] if gamma > 1 else []
    for n in range(1, n_max + 1):
        small = ideal_space(finer, n).dimension
        large = ideal_space(coarser, n).dimension
        if small > large:
            return False, f"arity {n}: dim {small} > {large}"
    return True, f"ideal dimensions nested up to arity {n_max}"


# =============================================================================
# Lattice Checks
# =============================================================================

def lattice_axioms_check(gamma_max):
    """
    Lattice axioms of meet and join on indices 1..gamma_max.

    Returns:
        (success, message)
    """
    indices = range(1, gamma_max + 1)
    for a in indices:
        if cas_meet(a, a) != a or cas_join(a, a) != a:
            return False, f"idempotence fails at {a}"
        for b in indices:
            meet, join = cas_meet(a, b), cas_join(a, b)
            if meet != cas_meet(b, a) or join != cas_join(b, a):
                return False, f"commutativity fails at ({a}, {b})"
            if cas_meet(a, join) != a or cas_join(a, meet) != a:
                return False, f"absorption fails at ({a}, {b})"
            if cas_leq(a, b) != (cas_meet(a, b) == a):
                return False, f"order and meet disagree at ({a}, {b})"
            if not (cas_leq(meet, a) and cas_leq(meet, b) and cas_leq(a, join) and cas_leq(b, join)):
                return False, f"bounds fail at ({a}, {b})"
            for c in indices:
                if cas_meet(cas_meet(a, b), c) != cas_meet(a, cas_meet(b, c)):
                    return False, f"meet associativity fails at ({a}, {b}, {c})"
                if cas_join(cas_join(a, b), c) != cas_join(a, cas_join(b, c)):
                    return False, f"join associativity fails at ({a}, {b}, {c})"
    return True, f"lattice axioms hold for indices ≤ {gamma_max}"


def morphism_agreement_check(gamma_prime_max, gamma_max):
    """
    Division criterion against the oracle for γ' ≤ gamma_prime_max, γ ≤ gamma_max.

    Returns:
        (success, message)
    """
    checked = 0
    for gamma in range(1, gamma_max + 1):
        for gamma_prime in range(1, gamma_prime_max + 1):
            check = morphism_exists(gamma_prime, gamma)
            if not check.agree:
                return False, f"CAs({gamma_prime}) -> CAs({gamma}): criterion {check.criterion}, oracle {check.oracle}"
            if not check.oracle_skipped:
                checked += 1
    return True, f"criterion agrees with the oracle on {checked} index pairs"
