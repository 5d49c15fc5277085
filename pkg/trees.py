"""
Binary trees of the free magmatic operad
Prefix-word encoding, lexicographic order, grafting and enumeration
"""

from functools import lru_cache
from math import comb
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

# =============================================================================
# Tree Type
# =============================================================================

class BinaryTree:
    """
    A complete binary tree, identified by its prefix word.

    The leaf is the word "0"; an internal node with children A and B is
    "2" + word(A) + word(B). Equality, hashing and ordering all go through
    the word, with 0 < 2.
    """

    __slots__ = ("left", "right", "word", "arity")

    def __init__(self, left=None, right=None):
        if (left is None) != (right is None):
            raise ValueError("an internal node needs both children")
        self.left = left
        self.right = right
        if left is None:
            self.word = "0"
            self.arity = 1
        else:
            self.word = "2" + left.word + right.word
            self.arity = left.arity + right.arity

    @property
    def degree(self):
        return self.arity - 1

    @property
    def is_leaf(self):
        return self.left is None

    def __eq__(self, other):
        return isinstance(other, BinaryTree) and self.word == other.word

    def __hash__(self):
        return hash(self.word)

    def __lt__(self, other):
        return self.word < other.word

    def __le__(self, other):
        return self.word <= other.word

    def __repr__(self):
        return f"BinaryTree({self.word!r})"

    def __str__(self):
        return self.word


LEAF = BinaryTree()


def catalan(n):
    """Catalan number cat(n)."""
    if n < 0:
        return 0
    return comb(2 * n, n) // (n + 1)


# =============================================================================
# Encodings
# =============================================================================

def prefix_word(t):
    """Canonical prefix word of a tree."""
    return t.word


def validate_prefix(word):
    """
    Check that a string is a valid prefix word.

    Raises:
        ValueError naming the 0-based position of the first violation
    """
    if not isinstance(word, str) or word == "":
        raise ValueError("empty prefix word")
    pending = 1  # subtrees still to be read
    for position, symbol in enumerate(word):
        if pending == 0:
            raise ValueError(f"prefix word {word!r}: trailing symbol at position {position}")
        if symbol == "2":
            pending += 1
        elif symbol == "0":
            pending -= 1
        else:
            raise ValueError(f"prefix word {word!r}: invalid symbol {symbol!r} at position {position}")
    if pending != 0:
        raise ValueError(f"prefix word {word!r}: ends early at position {len(word)}")


def parse_prefix(word):
    """
    Parse a prefix word over {0, 2} into a tree.

    Args:
        word: Prefix word such as "22000"

    Returns:
        BinaryTree
    """
    validate_prefix(word)
    stack = []
    for symbol in reversed(word):
        if symbol == "0":
            stack.append(LEAF)
        else:
            left = stack.pop()
            right = stack.pop()
            stack.append(BinaryTree(left, right))
    return stack[0]


def parse_parenthesized(text):
    """Parse the human form `(A,B)` with `L` (or `l`, `ℓ`) for the leaf."""
    source = "".join(text.split())
    position = 0

    def read():
        nonlocal position
        if position >= len(source):
            raise ValueError(f"tree {text!r}: unexpected end at position {position}")
        symbol = source[position]
        if symbol in "Llℓ":
            position += 1
            return LEAF
        if symbol != "(":
            raise ValueError(f"tree {text!r}: unexpected {symbol!r} at position {position}")
        position += 1
        left = read()
        if position >= len(source) or source[position] != ",":
            raise ValueError(f"tree {text!r}: expected ',' at position {position}")
        position += 1
        right = read()
        if position >= len(source) or source[position] != ")":
            raise ValueError(f"tree {text!r}: expected ')' at position {position}")
        position += 1
        return BinaryTree(left, right)

    tree = read()
    if position != len(source):
        raise ValueError(f"tree {text!r}: trailing input at position {position}")
    return tree


def parse_tree(text):
    """Parse either a prefix word or a parenthesized tree."""
    text = text.strip()
    if text and set(text) <= {"0", "2"}:
        return parse_prefix(text)
    return parse_parenthesized(text)


def to_parenthesized(t):
    """Human-readable `(A,B)` form."""
    if t.is_leaf:
        return "L"
    return f"({to_parenthesized(t.left)},{to_parenthesized(t.right)})"


# =============================================================================
# Order and Statistics
# =============================================================================

def lex_compare(t1, t2):
    """
    Compare prefix words lexicographically with 0 < 2.

    Returns:
        -1, 0 or 1
    """
    w1, w2 = t1.word, t2.word
    if w1 == w2:
        return 0
    return -1 if w1 < w2 else 1


def left_rank(t):
    """Number of internal nodes on the leftmost branch."""
    word = t.word
    return len(word) - len(word.lstrip("2"))


def left_comb(gamma):
    """ℒ_γ = (ℒ_{γ-1}, ℓ)."""
    if gamma < 0:
        raise ValueError(f"comb degree must be nonnegative, got {gamma}")
    return parse_prefix("2" * gamma + "0" * (gamma + 1))


def right_comb(gamma):
    """ℛ_γ = (ℓ, ℛ_{γ-1})."""
    if gamma < 0:
        raise ValueError(f"comb degree must be nonnegative, got {gamma}")
    return parse_prefix("20" * gamma + "0")


def mirror(t):
    """Exchange left and right subtrees recursively."""
    if t.is_leaf:
        return t
    return BinaryTree(mirror(t.right), mirror(t.left))


# Generator of Mag, the unique tree of degree 1
GENERATOR = BinaryTree(LEAF, LEAF)

# =============================================================================
# Grafting
# =============================================================================

def graft(t, i, s):
    """
    Partial composition t ∘_i s.

    Args:
        t: Host tree
        i: Leaf index of t, 1-based from the left
        s: Tree grafted on that leaf

    Returns:
        BinaryTree of arity |t| + |s| - 1
    """
    if not 1 <= i <= t.arity:
        raise ValueError(f"leaf index {i} out of range 1..{t.arity}")
    return _graft(t, i, s)


def _graft(t, i, s):
    if t.is_leaf:
        return s
    left_arity = t.left.arity
    if i <= left_arity:
        return BinaryTree(_graft(t.left, i, s), t.right)
    return BinaryTree(t.left, _graft(t.right, i - left_arity, s))


def complete_graft(t, subs):
    """
    Complete composition t ∘ [s_1, ..., s_n], grafting every leaf at once.

    Args:
        t: Host tree of arity n
        subs: Sequence of n trees

    Returns:
        BinaryTree
    """
    subs = list(subs)
    if len(subs) != t.arity:
        raise ValueError(f"complete composition needs {t.arity} trees, got {len(subs)}")
    return _complete_graft(t, subs, 0)


def _complete_graft(t, subs, offset):
    if t.is_leaf:
        return subs[offset]
    return BinaryTree(
        _complete_graft(t.left, subs, offset),
        _complete_graft(t.right, subs, offset + t.left.arity),
    )


def z_tree(d):
    """z_0 = ℓ, z_d = z_{d-1} ∘_{⌊(d-1)/2⌋+1} (ℓ,ℓ)."""
    if d < 0:
        raise ValueError(f"degree must be nonnegative, got {d}")
    tree = LEAF
    for k in range(1, d + 1):
        tree = graft(tree, (k - 1) // 2 + 1, GENERATOR)
    return tree


# =============================================================================
# Occurrences
# =============================================================================

class Occurrence(NamedTuple):
    """A pattern occurrence: anchor position in the prefix word and the subtrees under pattern leaves."""
    position: int
    substitutions: Tuple[BinaryTree, ...]


def match_at(pattern, t):
    """
    Match a pattern at the root of t.

    Returns:
        Tuple of subtrees matched by the pattern leaves, or None
    """
    found = []
    if _match(pattern, t, found):
        return tuple(found)
    return None


def _match(pattern, t, found):
    if pattern.is_leaf:
        found.append(t)
        return True
    if t.is_leaf:
        return False
    return _match(pattern.left, t.left, found) and _match(pattern.right, t.right, found)


def subtrees(t):
    """Yield (position, subtree) for every node of t in prefix order."""
    stack = [(0, t)]
    while stack:
        position, current = stack.pop()
        yield position, current
        if not current.is_leaf:
            stack.append((position + 1 + len(current.left.word), current.right))
            stack.append((position + 1, current.left))


def occurrences(t, s):
    """
    All occurrences of the pattern s in t, in prefix order of their anchors.

    Occurrences are anchored at internal nodes; pattern leaves match any subtree.
    The leaf pattern matches at every node.
    """
    found = []
    for position, current in subtrees(t):
        if current.is_leaf and not s.is_leaf:
            continue
        subs = match_at(s, current)
        if subs is not None:
            found.append(Occurrence(position, subs))
    return found


def contains_subtree(t, s):
    """True if the pattern s occurs in t."""
    if s.is_leaf:
        return True
    if s.arity > t.arity:
        return False
    if s.word in t.word:
        return True
    return any(
        match_at(s, current) is not None
        for _, current in subtrees(t)
        if not current.is_leaf
    )


def replace_at(t, position, replacement):
    """Replace the subtree anchored at a prefix-word position."""
    if position == 0:
        return replacement
    if t.is_leaf:
        raise ValueError(f"no node at position {position}")
    left_length = len(t.left.word)
    if position <= left_length:
        return BinaryTree(replace_at(t.left, position - 1, replacement), t.right)
    return BinaryTree(t.left, replace_at(t.right, position - 1 - left_length, replacement))


# =============================================================================
# Enumeration
# =============================================================================

def iter_prefix_words(n):
    """
    Lazily generate the prefix words of all arity-n trees in lex order.

    Args:
        n: Arity, at least 1
    """
    if n < 1:
        raise ValueError(f"arity must be at least 1, got {n}")
    total = 2 * n - 1
    buffer = []

    def extend(twos, zeros):
        if len(buffer) == total:
            yield "".join(buffer)
            return
        # '0' may close a subtree, or finish the whole word
        if zeros + 1 <= twos or (zeros + 1 == n and twos == n - 1):
            buffer.append("0")
            yield from extend(twos, zeros + 1)
            buffer.pop()
        if twos + 1 <= n - 1:
            buffer.append("2")
            yield from extend(twos + 1, zeros)
            buffer.pop()

    return extend(0, 0)


def iter_trees(n):
    """Lazily generate all arity-n trees in lex order."""
    return (parse_prefix(word) for word in iter_prefix_words(n))


@lru_cache(maxsize=16)
def _trees_cached(n):
    return tuple(iter_trees(n))


def enumerate_trees(n):
    """
    All trees of arity n, in lex order.

    Returns:
        List of Catalan(n-1) trees
    """
    if n < 1:
        raise ValueError(f"arity must be at least 1, got {n}")
    return list(_trees_cached(n))


def cubic_trees():
    """The five degree-3 trees a1 < ... < a5."""
    return enumerate_trees(4)


def cubic_tree(i):
    """The i-th cubic tree in lex order (1-based)."""
    if not 1 <= i <= 5:
        raise ValueError(f"cubic tree index must be in 1..5, got {i}")
    return _trees_cached(4)[i - 1]
