"""Permutations in one-line notation and the (right) weak order."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

Permutation = tuple[int, ...]

__all__ = [
    "Permutation",
    "parse_permutation",
    "format_permutation",
    "is_permutation",
    "inversions",
    "inverse_positions",
    "weak_leq",
    "weak_join",
    "weak_meet",
    "from_inversions",
    "all_permutations",
    "identity",
    "restrict",
]


def parse_permutation(text: str) -> Permutation:
    """Digit string (``"316452"``) for n <= 9, comma-separated otherwise."""
    text = text.strip()
    if "," in text:
        w = tuple(int(tok) for tok in text.split(","))
    elif text.isdigit():
        w = tuple(int(ch) for ch in text)
    else:
        raise ValueError(f"cannot parse permutation {text!r}")
    if not is_permutation(w):
        raise ValueError(f"{text!r} is not a permutation of 1..{len(w)}")
    return w


def format_permutation(w: Sequence[int]) -> str:
    if len(w) <= 9:
        return "".join(str(x) for x in w)
    return ",".join(str(x) for x in w)


def is_permutation(w: Sequence[int]) -> bool:
    return sorted(w) == list(range(1, len(w) + 1))


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def inverse_positions(w: Sequence[int]) -> dict[int, int]:
    return {x: i for i, x in enumerate(w)}


def inversions(w: Sequence[int]) -> frozenset[tuple[int, int]]:
    """Pairs ``(i, j)`` with ``i < j`` and j to the left of i."""
    out = set()
    for a in range(len(w)):
        for b in range(a + 1, len(w)):
            if w[a] > w[b]:
                out.add((w[b], w[a]))
    return frozenset(out)


def weak_leq(u: Sequence[int], w: Sequence[int]) -> bool:
    return inversions(u) <= inversions(w)


def from_inversions(inv: Iterable[tuple[int, int]], n: int) -> Permutation:
    """The permutation with the given inversion set.

    Raises ValueError if no such permutation exists.
    """
    inv = frozenset(inv)
    pos = [0] * (n + 1)
    for x in range(1, n + 1):
        before = 0
        for y in range(1, n + 1):
            if y < x and (y, x) not in inv:
                before += 1
            elif y > x and (x, y) in inv:
                before += 1
        pos[x] = before
    word = [0] * n
    for x in range(1, n + 1):
        if not 0 <= pos[x] < n or word[pos[x]]:
            raise ValueError("not the inversion set of a permutation")
        word[pos[x]] = x
    w = tuple(word)
    if inversions(w) != inv:
        raise ValueError("not the inversion set of a permutation")
    return w


def _transitive_closure(pairs: set[tuple[int, int]]) -> set[tuple[int, int]]:
    closed = set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(closed):
            for (c, d) in list(closed):
                if b == c and (a, d) not in closed:
                    closed.add((a, d))
                    changed = True
    return closed


def weak_join(u: Sequence[int], w: Sequence[int]) -> Permutation:
    """Least upper bound: inversion set is the transitive closure of the union."""
    if len(u) != len(w):
        raise ValueError("permutations of different sizes")
    closed = _transitive_closure(set(inversions(u)) | set(inversions(w)))
    return from_inversions(closed, len(u))


def weak_meet(u: Sequence[int], w: Sequence[int]) -> Permutation:
    # reversing the one-line word complements the inversion set
    return tuple(reversed(weak_join(tuple(reversed(u)), tuple(reversed(w)))))


@lru_cache(maxsize=16)
def all_permutations(n: int) -> tuple[Permutation, ...]:
    return tuple(itertools.permutations(range(1, n + 1)))


def restrict(w: Sequence[int], keep: Iterable[int]) -> tuple[int, ...]:
    keep = set(keep)
    return tuple(x for x in w if x in keep)
