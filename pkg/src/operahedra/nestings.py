"""Maximal nestings of a plane tree and the flip order on them.

A nesting is stored as a frozenset of tube bitsets.  Two maximal nestings are
adjacent when they differ in one tube; the cover goes up when the smallest
vertex leaving with the old tube is below the smallest one arriving with the new.
"""

from __future__ import annotations

import json
from enum import Enum
from typing import Iterable

from ._bits import lowest, mask_of, members, size
from .errors import NotAdjacentError, TheoremViolation
from .lattice import FinitePoset
from .theta import MoveKind, enumerate_theta, psi_inverse
from .trees import PlaneTree, is_tube

__all__ = [
    "Nesting",
    "CoverDirection",
    "as_nesting",
    "nesting_violation",
    "is_nesting",
    "is_maximal_nesting",
    "enumerate_maximal_nestings",
    "enumerate_maximal_nestings_direct",
    "flip",
    "cover_direction",
    "move_type",
    "mn_poset",
    "nesting_key",
    "nesting_to_lists",
    "nesting_to_json",
    "nesting_from_json",
    "format_nesting",
]

Nesting = frozenset  # of int tube masks


class CoverDirection(str, Enum):
    UP = "up"      # first argument is covered by the second
    DOWN = "down"  # second argument is covered by the first


def as_nesting(tubes: Iterable) -> Nesting:
    """Accept bitsets or iterables of vertices."""
    return frozenset(t if isinstance(t, int) else mask_of(t) for t in tubes)


def nesting_violation(tree: PlaneTree, tubes: Iterable) -> str | None:
    N = sorted(as_nesting(tubes))
    if tree.all_vertices not in N:
        return "the full vertex set is missing"
    for t in N:
        if not is_tube(tree, t):
            return f"{list(members(t))} is not a tube"
        if size(t) < 2:
            return f"{list(members(t))} has fewer than two vertices"
    for i, a in enumerate(N):
        for b in N[i + 1:]:
            c = a & b
            if c and c != a and c != b:
                return f"{list(members(a))} and {list(members(b))} overlap without nesting"
    return None


def is_nesting(tree: PlaneTree, tubes: Iterable) -> bool:
    return nesting_violation(tree, tubes) is None


def is_maximal_nesting(tree: PlaneTree, tubes: Iterable) -> bool:
    N = as_nesting(tubes)
    return len(N) == tree.n and is_nesting(tree, N)


def nesting_key(N: Nesting):
    return tuple(sorted((lowest(t), size(t), members(t)) for t in N))


def enumerate_maximal_nestings(tree: PlaneTree) -> list[Nesting]:
    """All maximal nestings, pulled back from Theta and canonically ordered."""
    return sorted((psi_inverse(tree, p) for p in enumerate_theta(tree)), key=nesting_key)


def enumerate_maximal_nestings_direct(tree: PlaneTree) -> list[Nesting]:
    """Independent enumerator: cut each tube along one internal edge, recursively."""
    par = tree.parent
    desc = tree.descendants

    def nest(S: int) -> list[frozenset[int]]:
        if S & (S - 1) == 0:
            return [frozenset()]
        out = []
        for c in members(S):
            if c == lowest(S):
                continue  # c's parent edge must lie inside S; the tube root has none
            assert S >> par[c] & 1
            lower = S & desc[c]
            upper = S & ~lower
            for nx in nest(lower):
                for ny in nest(upper):
                    out.append(frozenset({S}) | nx | ny)
        return out

    return sorted(set(nest(tree.all_vertices)), key=nesting_key)


def _parts(N: Nesting, t: int) -> list[int]:
    """The two maximal pieces (inner tubes or lone vertices) that t splits into."""
    inner = [s for s in N if s != t and s & t == s]
    top = [s for s in inner if not any(s != r and s & r == s for r in inner)]
    covered = 0
    for s in top:
        covered |= s
    return top + [1 << v for v in members(t & ~covered)]


def flip(tree: PlaneTree, N: Iterable, tau) -> tuple[Nesting, int]:
    """Replace ``tau`` by the unique other tube completing ``N - {tau}``."""
    N = as_nesting(N)
    tau = tau if isinstance(tau, int) else mask_of(tau)
    if tau not in N:
        raise ValueError("tau is not a tube of the nesting")
    if tau == tree.all_vertices:
        raise ValueError("the full vertex set cannot be flipped")
    parent = min((s for s in N if s != tau and s & tau == tau), key=size)
    parts = _parts(N, tau)
    rest = [s for s in _parts(N, parent) if s != tau]
    if len(parts) != 2 or len(rest) != 1:
        raise ValueError("not a maximal nesting")
    (a, b), (c,) = parts, rest
    options = [m for m in (a | c, b | c) if is_tube(tree, m)]
    if len(options) != 1:
        raise TheoremViolation("flip does not have exactly one replacement",
                               {"tree": str(tree), "nesting": nesting_to_lists(N), "tau": list(members(tau))})
    new_tau = options[0]
    out = (N - {tau}) | {new_tau}
    if not is_maximal_nesting(tree, out):
        raise TheoremViolation("flip left the maximal nestings",
                               {"tree": str(tree), "nesting": nesting_to_lists(N), "tau": list(members(tau))})
    return out, new_tau


def _difference(N: Nesting, M: Nesting) -> tuple[int, int]:
    gone, came = N - M, M - N
    if len(gone) != 1 or len(came) != 1 or len(N) != len(M):
        raise NotAdjacentError("nestings do not differ in exactly one tube")
    return next(iter(gone)), next(iter(came))


def cover_direction(tree: PlaneTree, N: Iterable, M: Iterable) -> CoverDirection:
    N, M = as_nesting(N), as_nesting(M)
    tau, tau2 = _difference(N, M)
    if flip(tree, N, tau)[0] != M:
        raise NotAdjacentError("nestings are not related by a flip")
    left, right = members(tau & ~tau2), members(tau2 & ~tau)
    up = left[0] < right[0]
    # "all of left below all of right" can fail both ways (e.g. tree ((())()),
    # {0,1,3} -> {1,2}); when it does decide, it must match the minimum rule
    if (left[-1] < right[0] and not up) or (right[-1] < left[0] and up):
        raise TheoremViolation("orientation rules disagree",
                               {"tree": str(tree), "nesting": nesting_to_lists(N), "other": nesting_to_lists(M)})
    return CoverDirection.UP if up else CoverDirection.DOWN


def move_type(tree: PlaneTree, N: Iterable, M: Iterable) -> MoveKind:
    N, M = as_nesting(N), as_nesting(M)
    tau, tau2 = _difference(N, M)
    if flip(tree, N, tau)[0] != M:
        raise NotAdjacentError("nestings are not related by a flip")
    return MoveKind.PERMUTOHEDRON if lowest(tau) == lowest(tau2) else MoveKind.ASSOCIAHEDRON


def mn_poset(tree: PlaneTree) -> FinitePoset:
    """MN(T) with covers labelled by move kind."""
    nestings = enumerate_maximal_nestings(tree)
    index = {N: i for i, N in enumerate(nestings)}
    covers, labels = [], []
    for i, N in enumerate(nestings):
        for tau in sorted(N):
            if tau == tree.all_vertices:
                continue
            M, _ = flip(tree, N, tau)
            if cover_direction(tree, N, M) is CoverDirection.UP:
                covers.append((i, index[M]))
                labels.append(move_type(tree, N, M))
    return FinitePoset(nestings, covers, labels)


def nesting_to_lists(N: Iterable) -> list[list[int]]:
    return [list(members(t)) for t in sorted(as_nesting(N), key=lambda t: (lowest(t), size(t), members(t)))]


def nesting_to_json(N: Iterable) -> str:
    return json.dumps(nesting_to_lists(N))


def nesting_from_json(text: str) -> Nesting:
    return as_nesting(json.loads(text))


def format_nesting(N: Iterable) -> str:
    return "{" + ",".join("{" + ",".join(map(str, t)) + "}" for t in nesting_to_lists(N)) + "}"
