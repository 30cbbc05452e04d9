"""Finite posets given by their Hasse diagrams, and lattice analytics on them.

Everything is computed from a dense boolean reachability matrix, so the
element count is capped (:data:`MAX_ELEMENTS`).  Meet and join tables are
built once per poset and cached.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from functools import cached_property
from typing import Callable, Hashable, Sequence

import numpy as np

from .errors import NotALatticeError, SizeLimitError

__all__ = [
    "MAX_ELEMENTS",
    "FinitePoset",
    "leq",
    "meet_join_tables",
    "is_lattice",
    "is_lattice_bez",
    "join_irreducibles",
    "meet_irreducibles",
    "height",
    "is_extremal",
    "left_modular_elements",
    "is_left_modular",
    "is_trim",
    "is_meet_semidistributive",
    "is_join_semidistributive",
    "is_semidistributive",
    "barnard_meet_semidistributive",
    "barnard_join_semidistributive",
    "unique_maximal",
    "unique_minimal",
    "is_distributive",
    "interval",
    "are_isomorphic",
    "find_isomorphism",
    "poset_to_json",
    "poset_from_json",
    "poset_to_dot",
]

MAX_ELEMENTS = 4096


class FinitePoset:
    """Immutable poset on ``elements`` with Hasse diagram ``covers``.

    ``covers`` holds index pairs ``(lower, upper)``; ``cover_labels`` is an
    optional parallel tuple of edge tags (e.g. move kinds) used for drawing.
    """

    def __init__(self, elements: Sequence[Hashable], covers, cover_labels=None, *, check: bool = True):
        self.elements = tuple(elements)
        if len(self.elements) > MAX_ELEMENTS:
            raise SizeLimitError(f"{len(self.elements)} elements exceeds the cap of {MAX_ELEMENTS}")
        self.covers = tuple(sorted((int(a), int(b)) for a, b in covers))
        if cover_labels is not None:
            label_of = {(int(a), int(b)): lab for (a, b), lab in zip(covers, cover_labels)}
            cover_labels = tuple(label_of[c] for c in self.covers)
        self.cover_labels = cover_labels
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate elements")
        if check:
            self._validate()

    @classmethod
    def from_leq(cls, elements: Sequence[Hashable], leq_fn: Callable[[Hashable, Hashable], bool]) -> "FinitePoset":
        """Build a poset from an order relation by transitive reduction."""
        n = len(elements)
        if n > MAX_ELEMENTS:
            raise SizeLimitError(f"{n} elements exceeds the cap of {MAX_ELEMENTS}")
        R = np.zeros((n, n), dtype=bool)
        for i, x in enumerate(elements):
            for j, y in enumerate(elements):
                R[i, j] = i == j or leq_fn(x, y)
        if (R & R.T & ~np.eye(n, dtype=bool)).any():
            raise ValueError("relation is not antisymmetric")
        # transitivity: R @ R must stay inside R
        if ((R.astype(np.int32) @ R.astype(np.int32)) > 0)[~R].any():
            raise ValueError("relation is not transitive")
        covers = _reduce(R)
        P = cls(elements, covers, check=False)
        P.__dict__["leq_matrix"] = R
        return P

    def _validate(self):
        n = len(self.elements)
        for a, b in self.covers:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise ValueError(f"bad cover {(a, b)}")
        if len(set(self.covers)) != len(self.covers):
            raise ValueError("repeated cover")
        R = self.leq_matrix  # raises on cycles
        if set(_reduce(R)) != set(self.covers):
            raise ValueError("covers are not transitively reduced")

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FinitePoset({len(self.elements)} elements, {len(self.covers)} covers)"

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        up = defaultdict(list)
        for a, b in self.covers:
            up[a].append(b)
        return tuple(tuple(up[i]) for i in range(len(self.elements)))

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        down = defaultdict(list)
        for a, b in self.covers:
            down[b].append(a)
        return tuple(tuple(down[i]) for i in range(len(self.elements)))

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        n = len(self.elements)
        indeg = [len(self.lower_covers[i]) for i in range(n)]
        ready = [i for i in range(n) if indeg[i] == 0]
        order = []
        while ready:
            i = ready.pop()
            order.append(i)
            for j in self.upper_covers[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
        if len(order) != n:
            raise ValueError("cover digraph has a cycle")
        return tuple(order)

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        """``R[i, j]`` is True iff element i <= element j."""
        n = len(self.elements)
        R = np.eye(n, dtype=bool)
        for i in reversed(self.topological_order):
            for j in self.upper_covers[i]:
                R[i] |= R[j]
        return R

    @cached_property
    def rank(self) -> tuple[int, ...]:
        """Length of the longest chain from a minimal element up to each element."""
        r = [0] * len(self.elements)
        for i in self.topological_order:
            for j in self.upper_covers[i]:
                r[j] = max(r[j], r[i] + 1)
        return tuple(r)

    @cached_property
    def corank(self) -> tuple[int, ...]:
        r = [0] * len(self.elements)
        for i in reversed(self.topological_order):
            for j in self.upper_covers[i]:
                r[i] = max(r[i], r[j] + 1)
        return tuple(r)

    def leq(self, x: Hashable, y: Hashable) -> bool:
        try:
            return bool(self.leq_matrix[self.index[x], self.index[y]])
        except KeyError as exc:
            raise KeyError(f"unknown element {exc.args[0]!r}") from None

    def minimal(self) -> list[int]:
        return [i for i in range(len(self.elements)) if not self.lower_covers[i]]

    def maximal(self) -> list[int]:
        return [i for i in range(len(self.elements)) if not self.upper_covers[i]]

    @cached_property
    def _tables(self):
        return _compute_tables(self.leq_matrix, self.topological_order)

    def require_lattice(self):
        meet, join, witness = self._tables
        if witness is not None:
            raise NotALatticeError(f"elements {witness} lack a meet or join", witness)
        return meet, join


def _reduce(R: np.ndarray) -> list[tuple[int, int]]:
    strict = R & ~np.eye(len(R), dtype=bool)
    Si = strict.astype(np.int32)
    through = (Si @ Si) > 0
    return [(int(a), int(b)) for a, b in zip(*np.nonzero(strict & ~through))]


def _compute_tables(R: np.ndarray, topo: Sequence[int]):
    """Meet/join tables, or a witness pair lacking a bound (first in index order)."""
    n = len(R)
    if n == 0:
        return None, None, (0, 0)
    rank_in_topo = np.empty(n, dtype=np.int64)
    rank_in_topo[list(topo)] = np.arange(n)
    join = np.full((n, n), -1, dtype=np.int64)
    meet = np.full((n, n), -1, dtype=np.int64)
    witness = None
    RT = R.T.copy()
    for x in range(n):
        for table, rel, pick, fill in ((join, R, np.argmin, n), (meet, RT, np.argmax, -1)):
            # common upper (or lower) bounds of x and each y
            bounds = rel[x][None, :] & rel
            has = bounds.any(axis=1)
            # candidate: the bound that comes first (last) in topological order
            keyed = np.where(bounds, rank_in_topo[None, :], fill)
            cand = np.where(has, pick(keyed, axis=1), -1)
            ok = has.copy()
            # the candidate must lie below (above) every common bound
            ok[has] = ~(bounds[has] & ~rel[cand[has]]).any(axis=1)
            table[x] = np.where(ok, cand, -1)
            bad = np.nonzero(~ok)[0]
            if len(bad) and witness is None:
                witness = (x, int(bad[0]))
    if witness is not None:
        return None, None, witness
    return meet, join, None


def leq(P: FinitePoset, x: Hashable, y: Hashable) -> bool:
    return P.leq(x, y)


def meet_join_tables(P: FinitePoset):
    """``(meet, join)`` index tables, or None when some pair lacks a bound."""
    meet, join, witness = P._tables
    return None if witness is not None else (meet, join)


def lattice_failure(P: FinitePoset) -> tuple[int, int] | None:
    return P._tables[2]


def is_lattice(P: FinitePoset) -> bool:
    return P._tables[2] is None


def is_lattice_bez(P: FinitePoset) -> bool:
    """Lattice test from bounded-ness plus joins of pairs of upper covers.

    A finite poset with unique minimum and maximum is a lattice as soon as
    every two upper covers of a common element have a least upper bound.
    """
    if len(P) == 0 or len(P.minimal()) != 1 or len(P.maximal()) != 1:
        return False
    R = P.leq_matrix
    for x in range(len(P)):
        ups = P.upper_covers[x]
        for a in range(len(ups)):
            for b in range(a + 1, len(ups)):
                bounds = R[ups[a]] & R[ups[b]]
                idx = np.nonzero(bounds)[0]
                # a least bound lies below every common bound
                if not any(bounds[idx].all() and R[c][idx].all() for c in idx):
                    return False
    return True


def join_irreducibles(P: FinitePoset) -> list[int]:
    P.require_lattice()
    return [i for i in range(len(P)) if len(P.lower_covers[i]) == 1]


def meet_irreducibles(P: FinitePoset) -> list[int]:
    P.require_lattice()
    return [i for i in range(len(P)) if len(P.upper_covers[i]) == 1]


def height(P: FinitePoset) -> int:
    return max(P.rank, default=0)


def is_extremal(P: FinitePoset) -> bool:
    h = height(P)
    return h == len(join_irreducibles(P)) == len(meet_irreducibles(P))


def left_modular_elements(P: FinitePoset) -> list[int]:
    """Elements u with ``(v | u) & w == v | (u & w)`` whenever ``v < w``."""
    meet, join = P.require_lattice()
    n = len(P)
    below = P.leq_matrix & ~np.eye(n, dtype=bool)
    out = []
    for u in range(n):
        lhs = meet[join[:, u]]           # lhs[v, w] = (v | u) & w
        rhs = join[:, meet[u]]           # rhs[v, w] = v | (u & w)
        if not (below & (lhs != rhs)).any():
            out.append(u)
    return out


def _left_modular_chain(P: FinitePoset) -> list[int] | None:
    good = set(left_modular_elements(P))
    (bottom,), (top,) = P.minimal(), P.maximal()
    stack, parent = [bottom], {bottom: None}
    while stack:
        x = stack.pop()
        if x == top:
            path = []
            while x is not None:
                path.append(x)
                x = parent[x]
            return path[::-1]
        for y in P.upper_covers[x]:
            if y in good and y not in parent:
                parent[y] = x
                stack.append(y)
    return None


def is_left_modular(P: FinitePoset) -> bool:
    return _left_modular_chain(P) is not None


def is_trim(P: FinitePoset) -> bool:
    return is_extremal(P) and is_left_modular(P)


def is_meet_semidistributive(P: FinitePoset) -> bool:
    """``x & y == x & z`` implies ``x & y == x & (y | z)``, checked exhaustively."""
    meet, join = P.require_lattice()
    for x in range(len(P)):
        a = meet[x]
        same = a[:, None] == a[None, :]
        if (same & (meet[x][join] != a[:, None])).any():
            return False
    return True


def is_join_semidistributive(P: FinitePoset) -> bool:
    meet, join = P.require_lattice()
    for x in range(len(P)):
        a = join[x]
        same = a[:, None] == a[None, :]
        if (same & (join[x][meet] != a[:, None])).any():
            return False
    return True


def is_semidistributive(P: FinitePoset) -> bool:
    return is_meet_semidistributive(P) and is_join_semidistributive(P)


def _extremes(R: np.ndarray, members: np.ndarray, top: bool) -> list[int]:
    idx = np.nonzero(members)[0]
    sub = R[np.ix_(idx, idx)]
    # an element of the set is maximal iff nothing else in the set lies above it
    counts = sub.sum(axis=1) if top else sub.sum(axis=0)
    return [int(i) for i in idx[counts == 1]]


def unique_maximal(P: FinitePoset, x: int, y: int) -> int | None:
    """The unique maximal element of ``up(x) - up(y)``, if there is one."""
    R = P.leq_matrix
    ext = _extremes(R, R[x] & ~R[y], top=True)
    return ext[0] if len(ext) == 1 else None


def unique_minimal(P: FinitePoset, x: int, y: int) -> int | None:
    """The unique minimal element of ``down(y) - down(x)``, if there is one."""
    R = P.leq_matrix
    ext = _extremes(R, R[:, y] & ~R[:, x], top=False)
    return ext[0] if len(ext) == 1 else None


def barnard_meet_semidistributive(P: FinitePoset) -> bool:
    """Every cover ``x < y`` has a unique maximal element in ``up(x) - up(y)``."""
    P.require_lattice()
    return all(unique_maximal(P, x, y) is not None for x, y in P.covers)


def barnard_join_semidistributive(P: FinitePoset) -> bool:
    P.require_lattice()
    return all(unique_minimal(P, x, y) is not None for x, y in P.covers)


def is_distributive(P: FinitePoset) -> bool:
    meet, join = P.require_lattice()
    for x in range(len(P)):
        a = meet[x]
        if (meet[x][join] != join[a[:, None], a[None, :]]).any():
            return False
    return True


def interval(P: FinitePoset, x: Hashable, y: Hashable) -> FinitePoset:
    """The induced subposet ``[x, y]``; covers restrict because intervals are convex."""
    i, j = P.index[x], P.index[y]
    R = P.leq_matrix
    keep = [k for k in range(len(P)) if R[i, k] and R[k, j]]
    pos = {k: t for t, k in enumerate(keep)}
    covers, labels = [], []
    for c, (a, b) in enumerate(P.covers):
        if a in pos and b in pos:
            covers.append((pos[a], pos[b]))
            if P.cover_labels is not None:
                labels.append(P.cover_labels[c])
    return FinitePoset([P.elements[k] for k in keep], covers,
                       labels if P.cover_labels is not None else None, check=False)


# ---------------------------------------------------------------------------
# isomorphism


def _signature(P: FinitePoset) -> list[tuple[int, int, int, int]]:
    return [(P.rank[i], P.corank[i], len(P.lower_covers[i]), len(P.upper_covers[i]))
            for i in range(len(P))]


def find_isomorphism(P: FinitePoset, Q: FinitePoset) -> list[int] | None:
    """An index map ``f`` with ``x < y`` a cover in P iff ``f[x] < f[y]`` is in Q."""
    if len(P) != len(Q) or len(P.covers) != len(Q.covers):
        return None
    sp, sq = _signature(P), _signature(Q)
    if Counter(sp) != Counter(sq):
        return None
    by_sig = defaultdict(list)
    for j, s in enumerate(sq):
        by_sig[s].append(j)
    order = sorted(range(len(P)), key=lambda i: (P.rank[i], i))
    qdown = [set(Q.lower_covers[j]) for j in range(len(Q))]
    f = [-1] * len(P)
    used = [False] * len(Q)

    def rec(k: int) -> bool:
        if k == len(order):
            return True
        x = order[k]
        lows = P.lower_covers[x]
        if lows:
            # images of lower covers are already fixed; candidates are their common upper covers
            cands = set(Q.upper_covers[f[lows[0]]])
            for a in lows[1:]:
                cands &= set(Q.upper_covers[f[a]])
        else:
            cands = by_sig[sp[x]]
        for y in sorted(cands):
            if used[y] or sq[y] != sp[x]:
                continue
            if qdown[y] != {f[a] for a in lows}:
                continue
            f[x], used[y] = y, True
            if rec(k + 1):
                return True
            f[x], used[y] = -1, False
        return False

    return f if rec(0) else None


def are_isomorphic(P: FinitePoset, Q: FinitePoset) -> bool:
    return find_isomorphism(P, Q) is not None


# ---------------------------------------------------------------------------
# serialization


def poset_to_json(P: FinitePoset, names: Callable[[Hashable], object] = str) -> str:
    data = {"elements": [names(x) for x in P.elements], "covers": [list(c) for c in P.covers]}
    if P.cover_labels is not None:
        data["labels"] = [str(getattr(lab, "value", lab)) for lab in P.cover_labels]
    return json.dumps(data)


def poset_from_json(text: str) -> FinitePoset:
    data = json.loads(text)
    elements = [tuple(e) if isinstance(e, list) else e for e in data["elements"]]
    return FinitePoset(elements, [tuple(c) for c in data["covers"]], data.get("labels"))


EDGE_COLORS = {"permutohedron": "purple", "associahedron": "orange"}


def poset_to_dot(P: FinitePoset, names: Callable[[Hashable], str] = str, name: str = "hasse") -> str:
    """Hasse diagram in DOT, one rank per height level, bottom at the bottom."""
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
    for i, x in enumerate(P.elements):
        label = names(x).replace('"', '\\"')
        lines.append(f'  n{i} [label="{label}"];')
    levels = defaultdict(list)
    for i, r in enumerate(P.rank):
        levels[r].append(i)
    for r in sorted(levels):
        lines.append("  { rank=same; " + " ".join(f"n{i};" for i in levels[r]) + " }")
    for c, (a, b) in enumerate(P.covers):
        attr = ""
        if P.cover_labels is not None:
            lab = str(getattr(P.cover_labels[c], "value", P.cover_labels[c]))
            attr = f' [color={EDGE_COLORS.get(lab, "black")}]'
        lines.append(f"  n{a} -> n{b}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
