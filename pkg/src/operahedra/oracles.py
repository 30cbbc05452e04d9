"""Independent brute-force constructions used to cross-check the fast paths."""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .lattice import FinitePoset
from .sorting.permutations import all_permutations, inversions
from .theta import enumerate_ornamentations, enumerate_theta, is_ornamentation, ornamentation_leq, theta_leq
from .trees import PlaneTree

__all__ = [
    "binary_trees",
    "tamari_poset",
    "weak_order_poset",
    "theta_poset",
    "ornamentation_join_bruteforce",
    "stack_sort_recursive",
]

BinaryTree = tuple | None


@lru_cache(maxsize=None)
def binary_trees(n: int) -> tuple[BinaryTree, ...]:
    if n == 0:
        return (None,)
    return tuple((left, right)
                 for k in range(n)
                 for left in binary_trees(k)
                 for right in binary_trees(n - 1 - k))


def _rotations(t: BinaryTree):
    """Every tree reached by one right rotation ``((a, b), c) -> (a, (b, c))``."""
    if t is None:
        return
    left, right = t
    if left is not None:
        a, b = left
        yield (a, (b, right))
    for l2 in _rotations(left):
        yield (l2, right)
    for r2 in _rotations(right):
        yield (left, r2)


def tamari_poset(n: int) -> FinitePoset:
    trees = binary_trees(n)
    index = {t: i for i, t in enumerate(trees)}
    covers = {(index[t], index[s]) for t in trees for s in _rotations(t)}
    return FinitePoset(trees, covers)


def weak_order_poset(n: int) -> FinitePoset:
    """Weak order on S_n; covers add exactly one inversion."""
    perms = all_permutations(n)
    inv = {w: inversions(w) for w in perms}
    index = {w: i for i, w in enumerate(perms)}
    covers = []
    for w in perms:
        for i in range(n - 1):
            if w[i] < w[i + 1]:
                up = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
                assert len(inv[up] - inv[w]) == 1
                covers.append((index[w], index[up]))
    return FinitePoset(perms, covers)


def theta_poset(tree: PlaneTree) -> FinitePoset:
    """Theta ordered by the defining relation, reduced to its Hasse diagram."""
    return FinitePoset.from_leq(enumerate_theta(tree), theta_leq)


def ornamentation_join_bruteforce(tree: PlaneTree, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    uppers = [r for r in enumerate_ornamentations(tree) if ornamentation_leq(a, r) and ornamentation_leq(b, r)]
    least = [r for r in uppers if all(ornamentation_leq(r, s) for s in uppers)]
    assert len(least) == 1 and is_ornamentation(tree, least[0])
    return least[0]


def stack_sort_recursive(word: Sequence[int]) -> tuple[int, ...]:
    if not word:
        return ()
    i = max(range(len(word)), key=word.__getitem__)
    return stack_sort_recursive(word[:i]) + stack_sort_recursive(word[i + 1:]) + (word[i],)
