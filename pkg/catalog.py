"""
Builtin objects and text-format inputs
Resolves names such as cas:3, mag:1,2, as, aas, 2nil, rc:3 and the
contents of rule, congruence and linear-element files
"""

import re
from dataclasses import dataclass
from typing import List, Optional

from linear import (
    LinearElement, aas_generators, as_generators, comb_difference,
    nil2_generators, parse_element, rc_generators,
)
from quotients import cas_generators, cubic_generators
from realizations import REALIZATIONS, rc_generators_pairs
from rewriting import (
    RewriteRule, RewriteSystem, parse_congruence, parse_rules, symmetrized,
)
from trees import cubic_tree, left_comb, right_comb

_CAS = re.compile(r"^cas:(\d+)$")
_MAG = re.compile(r"^mag:([1-5]),([1-5])$")
_RC = re.compile(r"^rc:(\d+)$")

BUILTIN_NAMES = ["cas:γ", "mag:i,j", "as", "aas", "2nil", "rc:γ"]


@dataclass
class QuotientInput:
    """
    An operad quotient in every form the commands need.

    Attributes:
        name: Builtin name or file stem
        congruence: Generator pairs of the set-theoretic congruence, or None
        system: Rewrite system to complete or count normal forms of, or None
        linear: Generators of the linear ideal, or None
    """
    name: str
    congruence: Optional[list] = None
    system: Optional[RewriteSystem] = None
    linear: Optional[List[LinearElement]] = None


def _mag_system(i, j):
    """The single-rule system of the realization table, or the lex orientation."""
    for entry in REALIZATIONS:
        if set(entry.pair) == {i, j}:
            return entry.system()
    lhs, rhs = max(i, j), min(i, j)
    return RewriteSystem([RewriteRule(cubic_tree(lhs), cubic_tree(rhs))], name=f"mag:{i},{j}")


def resolve_builtin(name):
    """
    Resolve a builtin name.

    Raises:
        ValueError if the name is not a builtin
    """
    key = name.strip().lower()
    match = _CAS.match(key)
    if match:
        gamma = int(match.group(1))
        if gamma < 1:
            raise ValueError(f"comb index must be at least 1, got {gamma}")
        system = RewriteSystem(
            [RewriteRule(left_comb(gamma), right_comb(gamma))] if gamma > 1 else [],
            name=key,
        )
        linear = [comb_difference(gamma)] if gamma > 1 else []
        return QuotientInput(key, cas_generators(gamma), system, linear)

    match = _MAG.match(key)
    if match:
        i, j = int(match.group(1)), int(match.group(2))
        if i == j:
            raise ValueError(f"cubic indices must differ, got {key}")
        a, b = min(i, j), max(i, j)
        linear = [LinearElement(4, {cubic_tree(a): 1, cubic_tree(b): -1})]
        return QuotientInput(key, cubic_generators(a, b), _mag_system(a, b), linear)

    match = _RC.match(key)
    if match:
        gamma = int(match.group(1))
        if gamma < 1:
            raise ValueError(f"comb index must be at least 1, got {gamma}")
        return QuotientInput(key, rc_generators_pairs(gamma), None, rc_generators(gamma))

    if key == "as":
        return QuotientInput(
            key, cas_generators(2),
            RewriteSystem([RewriteRule(left_comb(2), right_comb(2))], name=key),
            as_generators(),
        )
    if key == "aas":
        return QuotientInput(key, linear=aas_generators())
    if key == "2nil":
        return QuotientInput(key, linear=nil2_generators())
    raise ValueError(f"unknown builtin {name!r}; expected one of {', '.join(BUILTIN_NAMES)}")


def is_builtin(name):
    key = name.strip().lower()
    return bool(_CAS.match(key) or _MAG.match(key) or _RC.match(key)) or key in ("as", "aas", "2nil")


def cas_index(name):
    """Comb index γ of a cas:γ name, or None for any other quotient."""
    match = _CAS.match(name.strip().lower())
    return int(match.group(1)) if match else None


def parse_elements(text):
    """One linear element per line; `#` starts a comment."""
    elements = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            elements.append(parse_element(line))
        except ValueError as e:
            raise ValueError(f"line {number}: {e}") from e
    return elements


def from_text(text, name):
    """
    Read a quotient from file contents, detecting the format.

    `LHS -> RHS` lines give a rewrite system (and its congruence),
    `LHS ~ RHS` lines a congruence, anything else linear elements.
    """
    lines = [raw.split("#", 1)[0].strip() for raw in text.splitlines()]
    lines = [line for line in lines if line]
    if not lines:
        raise ValueError(f"{name}: no generators")
    if all("->" in line for line in lines):
        system = parse_rules(text, name=name)
        return QuotientInput(name, symmetrized(system), system, None)
    if all("~" in line for line in lines):
        return QuotientInput(name, parse_congruence(text))
    return QuotientInput(name, linear=parse_elements(text))
