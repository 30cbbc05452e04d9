"""Rooted plane trees with canonical preorder labels.

A tree with n+1 vertices uses labels ``0..n``; vertex 0 is the root and the labels
read off a preorder traversal (root, then each child subtree left to right).
Labels are derived data: the on-disk form is a nested-parentheses string such
as ``"((()())())"``, where each group is a vertex and its sub-groups are its
children in left-to-right order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator

from ._bits import mask_of, members
from .errors import TreeParseError

__all__ = [
    "PlaneTree",
    "parse_tree",
    "render_tree",
    "tree_to_json",
    "tree_from_json",
    "chain",
    "claw",
    "broom",
    "broom_parameters",
    "is_tube",
    "contract_edge",
    "contains",
    "rightmost_branch",
    "enumerate_trees",
    "has_unary_off_branch",
    "has_trim_shape",
    "catalan",
]


@dataclass(frozen=True)
class PlaneTree:
    """Immutable rooted plane tree; ``children[v]`` lists v's children left to right."""

    children: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        kids = tuple(tuple(c) for c in self.children)
        object.__setattr__(self, "children", kids)
        if not kids:
            raise ValueError("a tree has at least one vertex")
        # the preorder walk must visit 0, 1, ..., n in that order
        expected = 0
        stack = [0]
        while stack:
            v = stack.pop()
            if v != expected:
                raise ValueError(f"labels are not a preorder traversal (saw {v}, expected {expected})")
            expected += 1
            for c in reversed(kids[v]):
                if not 0 < c < len(kids):
                    raise ValueError(f"child label {c} out of range")
                stack.append(c)
        if expected != len(kids):
            raise ValueError("tree is not connected")

    @property
    def n(self) -> int:
        return len(self.children) - 1

    @cached_property
    def parent(self) -> tuple[int, ...]:
        """Parent of each vertex; the root maps to -1."""
        par = [-1] * len(self.children)
        for v, cs in enumerate(self.children):
            for c in cs:
                par[c] = v
        return tuple(par)

    @cached_property
    def descendants(self) -> tuple[int, ...]:
        """Bitset of ``{w : v <=_T w}`` for each vertex v (v itself included)."""
        desc = [0] * len(self.children)
        for v in reversed(range(len(self.children))):
            m = 1 << v
            for c in self.children[v]:
                m |= desc[c]
            desc[v] = m
        return tuple(desc)

    @cached_property
    def ancestors(self) -> tuple[int, ...]:
        """Bitset of ``{w : w <=_T v}`` for each vertex v (v itself included)."""
        anc = [0] * len(self.children)
        for v in range(len(self.children)):
            p = self.parent[v]
            anc[v] = (1 << v) | (anc[p] if p >= 0 else 0)
        return tuple(anc)

    def leq(self, a: int, b: int) -> bool:
        """Tree order: ``a <=_T b`` iff a lies on the path from the root to b."""
        return bool(self.descendants[a] >> b & 1)

    def comparable(self, a: int, b: int) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    @property
    def all_vertices(self) -> int:
        return (1 << (self.n + 1)) - 1

    def __str__(self) -> str:
        return render_tree(self)


def parse_tree(text: str) -> PlaneTree:
    """Parse nested-parentheses text into a tree labelled by preorder."""
    if not text:
        raise TreeParseError("empty input", 0)
    kids: list[list[int]] = []
    stack: list[int] = []
    closed = False
    for i, ch in enumerate(text):
        if closed:
            raise TreeParseError("trailing input after the root group", i)
        if ch == "(":
            v = len(kids)
            kids.append([])
            if stack:
                kids[stack[-1]].append(v)
            stack.append(v)
        elif ch == ")":
            if not stack:
                raise TreeParseError("unbalanced ')'", i)
            stack.pop()
            closed = not stack
        else:
            raise TreeParseError(f"unexpected character {ch!r}", i)
    if stack:
        raise TreeParseError("unclosed '('", len(text))
    return PlaneTree(tuple(tuple(c) for c in kids))


def render_tree(tree: PlaneTree) -> str:
    out: list[str] = []
    stack: list[int | None] = [0]
    while stack:
        v = stack.pop()
        if v is None:
            out.append(")")
            continue
        out.append("(")
        stack.append(None)
        stack.extend(reversed(tree.children[v]))
    return "".join(out)


def tree_to_json(tree: PlaneTree) -> str:
    return json.dumps({"children": [list(c) for c in tree.children]})


def tree_from_json(text: str) -> PlaneTree:
    data = json.loads(text)
    return PlaneTree(tuple(tuple(c) for c in data["children"]))


def _from_nested(root, kids_of) -> PlaneTree:
    """Relabel an arbitrary ordered tree by preorder."""
    order: list = []
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(reversed(kids_of[v]))
    label = {v: i for i, v in enumerate(order)}
    return PlaneTree(tuple(tuple(label[c] for c in kids_of[v]) for v in order))


def chain(n: int) -> PlaneTree:
    if n < 0:
        raise ValueError("n must be non-negative")
    return PlaneTree(tuple((v + 1,) if v < n else () for v in range(n + 1)))


def claw(n: int) -> PlaneTree:
    if n < 0:
        raise ValueError("n must be non-negative")
    return PlaneTree((tuple(range(1, n + 1)),) + ((),) * n)


def broom(k: int, n: int) -> PlaneTree:
    """Handle ``0-1-...-(n-k)`` whose top vertex carries k leaves ``n-k+1..n``."""
    if not 1 <= k <= n:
        raise ValueError(f"broom needs 1 <= k <= n, got k={k}, n={n}")
    h = n - k
    kids = [(v + 1,) for v in range(h)]
    kids.append(tuple(range(h + 1, n + 1)))
    kids.extend(() for _ in range(k))
    return PlaneTree(tuple(kids))


def broom_parameters(tree: PlaneTree) -> tuple[int, int] | None:
    """Return ``(k, n)`` if the tree equals ``broom(k, n)``, else None."""
    n = tree.n
    if n < 1:
        return None
    v = 0
    while len(tree.children[v]) == 1 and tree.children[tree.children[v][0]]:
        v = tree.children[v][0]
    k = len(tree.children[v])
    if k == 0 or any(tree.children[c] for c in tree.children[v]):
        return None
    return (k, n) if broom(k, n) == tree else None


def is_tube(tree: PlaneTree, vertices: Iterable[int] | int) -> bool:
    """True iff the (nonempty) vertex set induces a connected subgraph."""
    m = vertices if isinstance(vertices, int) else mask_of(vertices)
    if m == 0 or m >> (tree.n + 1):
        return False
    # connected iff exactly one member has its parent outside the set
    tops = 0
    for v in members(m):
        p = tree.parent[v]
        if p < 0 or not m >> p & 1:
            tops += 1
    return tops == 1


def contract_edge(tree: PlaneTree, v: int) -> PlaneTree:
    """Merge non-root v into its parent, splicing v's children in at v's place."""
    if not 1 <= v <= tree.n:
        raise ValueError(f"cannot contract at vertex {v}; it must be a non-root vertex")
    p = tree.parent[v]
    kids = {u: list(cs) for u, cs in enumerate(tree.children) if u != v}
    pos = kids[p].index(v)
    kids[p][pos:pos + 1] = list(tree.children[v])
    return _from_nested(0, kids)


def contains(tree: PlaneTree, other: PlaneTree) -> bool:
    """True iff some sequence of edge contractions turns ``tree`` into ``other``."""
    target = render_tree(other)
    return _contains(render_tree(tree), target)


@lru_cache(maxsize=None)
def _contains(src: str, target: str) -> bool:
    if len(src) < len(target):
        return False
    if len(src) == len(target):
        return src == target
    t = parse_tree(src)
    seen = set()
    for v in range(1, t.n + 1):
        s = render_tree(contract_edge(t, v))
        if s not in seen:
            seen.add(s)
            if _contains(s, target):
                return True
    return False


def rightmost_branch(tree: PlaneTree) -> frozenset[int]:
    out = [0]
    v = 0
    while tree.children[v]:
        v = tree.children[v][-1]
        out.append(v)
    return frozenset(out)


def _dyck_words(pairs: int) -> Iterator[str]:
    # lexicographic with "(" < ")"
    def rec(prefix: str, opened: int, closed: int):
        if closed == pairs:
            yield prefix
            return
        if opened < pairs:
            yield from rec(prefix + "(", opened + 1, closed)
        if closed < opened:
            yield from rec(prefix + ")", opened, closed + 1)

    return rec("", 0, 0)


def enumerate_trees(n: int) -> list[PlaneTree]:
    """Every plane tree with n+1 vertices once, ordered by text form."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return [parse_tree("(" + w + ")") for w in _dyck_words(n)]


def has_unary_off_branch(tree: PlaneTree) -> bool:
    """Every vertex off the rightmost branch has at most one child."""
    branch = rightmost_branch(tree)
    return all(len(cs) <= 1 for v, cs in enumerate(tree.children) if v not in branch)


def has_trim_shape(tree: PlaneTree) -> bool:
    """Root has at most two children and every other vertex at most one."""
    return len(tree.children[0]) <= 2 and all(len(cs) <= 1 for cs in tree.children[1:])


def catalan(n: int) -> int:
    c = 1
    for i in range(n):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c
