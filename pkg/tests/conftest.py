"""
Shared fixtures and hypothesis strategies
"""

import os
import sys

import pytest
from hypothesis import strategies as st

# Add repository root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from quotients import cas3_system  # noqa: E402
from trees import LEAF, BinaryTree, enumerate_trees  # noqa: E402


def trees(max_arity=6):
    """Trees of arity 1..max_arity, small ones first."""
    return st.integers(min_value=1, max_value=max_arity).flatmap(
        lambda n: st.sampled_from(enumerate_trees(n))
    )


def internal_trees(max_arity=6):
    return st.integers(min_value=2, max_value=max_arity).flatmap(
        lambda n: st.sampled_from(enumerate_trees(n))
    )


def recursive_trees(max_leaves=12):
    return st.recursive(
        st.just(LEAF),
        lambda children: st.builds(BinaryTree, children, children),
        max_leaves=max_leaves,
    )


def compositions(max_parts=4, max_part=3):
    return st.lists(st.integers(min_value=1, max_value=max_part), max_size=max_parts).map(tuple)


@pytest.fixture(scope="session")
def cas3():
    return cas3_system()


@pytest.fixture
def golden_dir(tmp_path):
    """An empty golden directory."""
    path = tmp_path / "golden"
    path.mkdir()
    return path
