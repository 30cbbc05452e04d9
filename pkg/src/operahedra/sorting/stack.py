"""West's stack-sorting map and the ideals it is compared against."""

from __future__ import annotations

from typing import Collection, Sequence

from ..errors import SizeLimitError
from .permutations import Permutation, all_permutations, identity, inversions, is_permutation

__all__ = [
    "stack_sort",
    "stack_inversion_criterion",
    "w_circ",
    "delta_ideal",
    "in_delta",
    "stack_preimages",
    "PREIMAGE_CAP",
    "sortable",
]

PREIMAGE_CAP = 9


def stack_sort(word: Sequence[int]) -> tuple[int, ...]:
    """``s(L m R) = s(L) s(R) m`` where m is the largest letter."""
    # one pass of an actual stack: pop while the top is smaller than the incoming letter
    out: list[int] = []
    stack: list[int] = []
    for x in word:
        while stack and stack[-1] < x:
            out.append(stack.pop())
        stack.append(x)
    out.extend(reversed(stack))
    return tuple(out)


def stack_inversion_criterion(sigma: Sequence[int], a: int, b: int) -> bool:
    """Whether some ``c > b`` sits between b and a, with b first, in sigma."""
    if not a < b:
        raise ValueError("expected a < b")
    pos = {x: i for i, x in enumerate(sigma)}
    pa, pb = pos[a], pos[b]
    return pb < pa and any(c > b for c in sigma[pb + 1:pa])


def w_circ(k: int, n: int) -> Permutation:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    return tuple(range(k, 0, -1)) + tuple(range(k + 1, n + 1))


def in_delta(w: Sequence[int], k: int) -> bool:
    """Membership in the principal ideal below ``w_circ(k, n)``."""
    return all(j <= k for _, j in inversions(w))


def delta_ideal(k: int, n: int, cap: int = PREIMAGE_CAP) -> frozenset[Permutation]:
    """Permutations below ``w_circ(k, n)``: those fixing every letter past k."""
    w_circ(k, n)
    if n > cap:
        raise SizeLimitError(f"n={n} exceeds the permutation cap of {cap}")
    by_fix = frozenset(w for w in all_permutations(n) if all(w[i - 1] == i for i in range(k + 1, n + 1)))
    by_inv = frozenset(w for w in all_permutations(n) if in_delta(w, k))
    if by_fix != by_inv:
        raise AssertionError(f"the two descriptions of the ideal disagree for k={k}, n={n}")
    return by_fix


def stack_preimages(targets: Collection[Sequence[int]], n: int, cap: int = PREIMAGE_CAP) -> frozenset[Permutation]:
    """All sigma in S_n with ``s(sigma)`` in ``targets``, by full enumeration."""
    if n > cap:
        raise SizeLimitError(f"n={n} exceeds the preimage cap of {cap}")
    wanted = {tuple(t) for t in targets}
    for t in wanted:
        if len(t) != n or not is_permutation(t):
            raise ValueError(f"{t} is not a permutation of 1..{n}")
    return frozenset(w for w in all_permutations(n) if stack_sort(w) in wanted)


def sortable(n: int) -> frozenset[Permutation]:
    return stack_preimages([identity(n)], n)
