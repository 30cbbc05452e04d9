"""Pairs (linear extension, ornamentation) over the forest of a rooted tree.

The forest is the tree with its root deleted, so its vertices are ``1..n``.  An
ornament hung at v is a connected vertex set whose tree-minimum is v; an
ornamentation assigns one ornament to each vertex so that any two are nested
or disjoint.  The set Theta consists of the pairs ``(lam, rho)`` in which every
ornament occupies consecutive positions of the linear extension ``lam``; it is
ordered componentwise (inversion-set containment, pointwise containment) and
is isomorphic to the lattice of maximal nestings via :func:`psi`.

Ornaments are stored as int bitsets, ``rho[v]`` for ``v`` in ``1..n`` with
``rho[0] == 0`` as a placeholder so that vertex labels index directly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from ._bits import highest, lowest, mask_of, members
from .errors import TheoremViolation
from .sorting.permutations import from_inversions, weak_join
from .trees import PlaneTree, has_unary_off_branch, rightmost_branch

__all__ = [
    "MoveKind",
    "ThetaPair",
    "CoverMove",
    "enumerate_linear_extensions",
    "is_linear_extension",
    "rho_min",
    "rho_max",
    "is_ornamentation",
    "enumerate_ornamentations",
    "ornamentation_leq",
    "ornamentation_meet",
    "ornamentation_join",
    "theta_violation",
    "is_theta_pair",
    "enumerate_theta",
    "psi",
    "psi_inverse",
    "theta_leq",
    "theta_covers",
    "find_move",
    "join_of_covers",
    "forced_max_of_difference",
    "forced_min_of_difference",
    "perm_move_frames",
    "pair_to_json",
    "pair_from_json",
    "pair_to_dot",
]


class MoveKind(str, Enum):
    PERMUTOHEDRON = "permutohedron"
    ASSOCIAHEDRON = "associahedron"


@dataclass(frozen=True)
class ThetaPair:
    lam: tuple[int, ...]
    rho: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.lam)

    @cached_property
    def position(self) -> tuple[int, ...]:
        pos = [-1] * (len(self.lam) + 1)
        for i, v in enumerate(self.lam):
            pos[v] = i
        return tuple(pos)

    @cached_property
    def inv_mask(self) -> int:
        """Bit ``i*(n+1)+j`` is set iff ``(i, j)`` is an inversion of lam."""
        n1 = len(self.lam) + 1
        m = 0
        seen = 0
        for v in self.lam:
            # every larger letter already placed forms an inversion (v, w)
            for w in members(seen >> (v + 1) << (v + 1)):
                m |= 1 << (v * n1 + w)
            seen |= 1 << v
        return m

    def before(self, a: int, b: int) -> bool:
        return self.position[a] < self.position[b]

    def block(self, v: int) -> tuple[int, int]:
        """First and last positions of ``rho[v]`` within lam."""
        start = self.position[v]
        return start, start + bin(self.rho[v]).count("1") - 1

    def ornament(self, v: int) -> frozenset[int]:
        return frozenset(members(self.rho[v]))

    @cached_property
    def sort_key(self):
        return (self.lam, tuple(members(r) for r in self.rho[1:]))

    def __lt__(self, other: "ThetaPair") -> bool:
        return self.sort_key < other.sort_key


@dataclass(frozen=True)
class CoverMove:
    """An upper cover of ``lower`` together with the witnesses of its move.

    Permutohedron moves carry ``(p, q)``: the adjacent blocks rho(p), rho(q)
    that are swapped.  Associahedron moves carry ``(t, t_next)``: rho(t) grows
    by the block starting right after it.
    """

    lower: ThetaPair
    upper: ThetaPair
    kind: MoveKind
    witnesses: tuple[int, int]


# ---------------------------------------------------------------------------
# linear extensions and ornamentations


def is_linear_extension(tree: PlaneTree, lam: Sequence[int]) -> bool:
    n = tree.n
    if sorted(lam) != list(range(1, n + 1)):
        return False
    seen = 1  # the root counts as placed
    for v in lam:
        if not seen >> tree.parent[v] & 1:
            return False
        seen |= 1 << v
    return True


def enumerate_linear_extensions(tree: PlaneTree) -> list[tuple[int, ...]]:
    """Linear extensions of the forest in lexicographic order."""
    out: list[tuple[int, ...]] = []
    word: list[int] = []

    def rec(available: list[int]):
        if not available:
            out.append(tuple(word))
            return
        for i, v in enumerate(available):
            word.append(v)
            rec(sorted(available[:i] + available[i + 1:] + list(tree.children[v])))
            word.pop()

    rec(sorted(tree.children[0]))
    return out


def rho_min(tree: PlaneTree) -> tuple[int, ...]:
    return (0,) + tuple(1 << v for v in range(1, tree.n + 1))


def rho_max(tree: PlaneTree) -> tuple[int, ...]:
    return (0,) + tuple(tree.descendants[1:])


def _ornament_ok(tree: PlaneTree, v: int, m: int) -> bool:
    if not m >> v & 1 or m & ~tree.descendants[v]:
        return False
    for w in members(m):
        if w != v and not m >> tree.parent[w] & 1:
            return False
    return True


def _laminar(masks: Sequence[int]) -> bool:
    for i in range(len(masks)):
        a = masks[i]
        for j in range(i + 1, len(masks)):
            b = masks[j]
            c = a & b
            if c and c != a and c != b:
                return False
    return True


def is_ornamentation(tree: PlaneTree, rho: Sequence[int]) -> bool:
    if len(rho) != tree.n + 1 or rho[0] != 0:
        return False
    return all(_ornament_ok(tree, v, rho[v]) for v in range(1, tree.n + 1)) and _laminar(rho[1:])


def _ornaments_hung_at(tree: PlaneTree, v: int) -> list[int]:
    """Every connected set whose tree-minimum is v."""
    opts = [1 << v]
    for c in tree.children[v]:
        sub = _ornaments_hung_at(tree, c)
        opts = opts + [m | s for m in opts for s in sub]
    return opts


def enumerate_ornamentations(tree: PlaneTree) -> list[tuple[int, ...]]:
    """Every ornamentation of the forest; exponential, for oracles at desk scale."""
    n = tree.n
    choices = [_ornaments_hung_at(tree, v) for v in range(1, n + 1)]
    out = []
    cur: list[int] = []

    def rec(i: int):
        if i == n:
            out.append((0,) + tuple(cur))
            return
        for m in choices[i]:
            if all(not (m & o) or (m & o) in (m, o) for o in cur):
                cur.append(m)
                rec(i + 1)
                cur.pop()

    rec(0)
    return out


def ornamentation_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(not (x & ~y) for x, y in zip(a, b))


def ornamentation_meet(tree: PlaneTree, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    rho = tuple(x & y for x, y in zip(a, b))
    if not is_ornamentation(tree, rho):
        raise TheoremViolation("pointwise intersection is not an ornamentation",
                               {"tree": str(tree), "a": list(a), "b": list(b)})
    return rho


def ornamentation_join(tree: PlaneTree, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Least upper bound, by closing the pointwise union.

    Any upper bound whose ornament at v contains a vertex w must also contain
    the ornament at w, so absorbing rho(w) into rho(v) until nothing changes
    gives the least one.
    """
    rho = [x | y for x, y in zip(a, b)]
    changed = True
    while changed:
        changed = False
        for v in range(1, len(rho)):
            m = rho[v]
            for w in members(m):
                if w != v:
                    m |= rho[w]
            if m != rho[v]:
                rho[v] = m
                changed = True
    out = tuple(rho)
    if not is_ornamentation(tree, out):
        raise TheoremViolation("closed union is not an ornamentation",
                               {"tree": str(tree), "a": list(a), "b": list(b)})
    return out


# ---------------------------------------------------------------------------
# Theta pairs


def theta_violation(tree: PlaneTree, pair: ThetaPair) -> str | None:
    """Name the first violated constraint, or None for a valid pair."""
    if not is_linear_extension(tree, pair.lam):
        return "lam is not a linear extension of the forest"
    if len(pair.rho) != tree.n + 1 or pair.rho[0] != 0:
        return "rho has the wrong shape"
    for v in range(1, tree.n + 1):
        if not _ornament_ok(tree, v, pair.rho[v]):
            return f"rho({v}) is not an ornament hung at {v}"
    if not _laminar(pair.rho[1:]):
        return "two ornaments are neither nested nor disjoint"
    for v in range(1, tree.n + 1):
        start, end = pair.block(v)
        if mask_of(pair.lam[start:end + 1]) != pair.rho[v]:
            return f"rho({v}) is not a consecutive factor of lam"
    return None


def is_theta_pair(tree: PlaneTree, pair: ThetaPair) -> bool:
    return theta_violation(tree, pair) is None


def _theta_for_extension(tree: PlaneTree, lam: tuple[int, ...]) -> Iterator[ThetaPair]:
    n = len(lam)
    # longest run of descendants of lam[i] starting at position i
    reach = []
    for i, v in enumerate(lam):
        j = i
        while j + 1 < n and tree.descendants[v] >> lam[j + 1] & 1:
            j += 1
        reach.append(j)
    ends = [0] * n

    def rec(i: int):
        if i < 0:
            rho = [0] * (n + 1)
            for s in range(n):
                rho[lam[s]] = mask_of(lam[s:ends[s] + 1])
            yield ThetaPair(lam, tuple(rho))
            return
        # choose the block end at i so it never cuts a block starting to its right
        e = i
        while e <= reach[i]:
            ends[i] = e
            yield from rec(i - 1)
            if e + 1 > reach[i]:
                break
            e = max(e + 1, ends[e + 1])

    yield from rec(n - 1)


def enumerate_theta(tree: PlaneTree) -> list[ThetaPair]:
    """All of Theta for this tree, sorted by (lam, ornaments)."""
    pairs = []
    for lam in enumerate_linear_extensions(tree):
        pairs.extend(_theta_for_extension(tree, lam))
    return sorted(pairs)


def psi(tree: PlaneTree, nesting: Iterable[int]) -> ThetaPair:
    """Map a maximal nesting to its (linear extension, ornamentation) pair."""
    tubes = sorted(set(nesting), key=lambda m: bin(m).count("1"))
    n = tree.n
    rho = [0] + [1 << v for v in range(1, n + 1)]
    for m in tubes:
        r = lowest(m)
        if r and bin(m).count("1") > bin(rho[r]).count("1"):
            rho[r] = m

    def order(m: int) -> list[int]:
        if m & (m - 1) == 0:
            return [lowest(m)]
        inner = [t for t in tubes if t != m and t & m == t]
        top = [t for t in inner if not any(t != s and t & s == t for s in inner)]
        covered = 0
        for t in top:
            covered |= t
        parts = top + [1 << v for v in members(m & ~covered)]
        if len(parts) != 2:
            raise ValueError("not a maximal nesting: a tube does not split in two")
        root = lowest(m)
        parts.sort(key=lambda part: not part >> root & 1)
        return order(parts[0]) + order(parts[1])

    full = order(tree.all_vertices)
    if full[0] != 0:
        raise ValueError("nesting does not start at the root")
    return ThetaPair(tuple(full[1:]), tuple(rho))


def psi_inverse(tree: PlaneTree, pair: ThetaPair) -> frozenset[int]:
    """The unique maximal nesting mapped to ``pair`` by :func:`psi`."""
    rho, pos = pair.rho, pair.position
    tubes: list[int] = []

    def build(root: int, inner: int):
        verts = members(inner)
        tops = [v for v in verts
                if not any(w != v and rho[v] & rho[w] == rho[v] for w in verts)]
        tops.sort(key=lambda v: pos[v])
        acc = 1 << root
        for v in tops:
            acc |= rho[v]
            tubes.append(acc)
        for v in tops:
            build(v, rho[v] & ~(1 << v))

    build(0, tree.all_vertices & ~1)
    return frozenset(tubes)


def theta_leq(a: ThetaPair, b: ThetaPair) -> bool:
    return not (a.inv_mask & ~b.inv_mask) and ornamentation_leq(a.rho, b.rho)


def _swap_adjacent_blocks(lam: tuple[int, ...], first: tuple[int, int], second: tuple[int, int]) -> tuple[int, ...]:
    (s1, e1), (s2, e2) = first, second
    assert e1 + 1 == s2
    return lam[:s1] + lam[s2:e2 + 1] + lam[s1:e1 + 1] + lam[e2 + 1:]


def theta_covers(tree: PlaneTree, pair: ThetaPair) -> list[CoverMove]:
    """All upper covers of ``pair``, each with its move witnesses.

    Candidates are proposed syntactically and kept only when the result is a
    valid Theta pair.
    """
    n = tree.n
    lam, rho = pair.lam, pair.rho
    moves: list[CoverMove] = []
    for p in range(1, n + 1):
        s_p, e_p = pair.block(p)
        if e_p + 1 >= n:
            continue
        q = lam[e_p + 1]
        # permutohedron: swap rho(p) with the block rho(q) right after it
        if not tree.comparable(p, q) and highest(rho[p]) < lowest(rho[q]):
            new_lam = _swap_adjacent_blocks(lam, (s_p, e_p), pair.block(q))
            cand = ThetaPair(new_lam, rho)
            if is_theta_pair(tree, cand):
                moves.append(CoverMove(pair, cand, MoveKind.PERMUTOHEDRON, (p, q)))
        # associahedron: grow rho(p) by the block starting at its successor
        if rho[p] >> tree.parent[q] & 1:
            new_rho = list(rho)
            new_rho[p] = rho[p] | rho[q]
            cand = ThetaPair(lam, tuple(new_rho))
            if is_theta_pair(tree, cand):
                moves.append(CoverMove(pair, cand, MoveKind.ASSOCIAHEDRON, (p, q)))
    return moves


def find_move(tree: PlaneTree, lower: ThetaPair, upper: ThetaPair) -> CoverMove:
    for m in theta_covers(tree, lower):
        if m.upper == upper:
            return m
    raise ValueError("upper does not cover lower in Theta")


def join_of_covers(tree: PlaneTree, p0: ThetaPair, p1: ThetaPair, p2: ThetaPair) -> ThetaPair:
    """Least upper bound of two distinct upper covers of ``p0``.

    Follows the case analysis on move kinds: two swaps, two growths, or one
    of each (with the coincident-witness sub-cases handled separately).
    """
    if p1 == p2:
        raise ValueError("the two covers must be distinct")
    m1, m2 = find_move(tree, p0, p1), find_move(tree, p0, p2)
    if m1.kind is MoveKind.ASSOCIAHEDRON and m2.kind is MoveKind.PERMUTOHEDRON:
        m1, m2 = m2, m1
    lam0, rho0 = p0.lam, p0.rho

    if m1.kind is MoveKind.PERMUTOHEDRON and m2.kind is MoveKind.PERMUTOHEDRON:
        result = ThetaPair(weak_join(m1.upper.lam, m2.upper.lam), rho0)
    elif m1.kind is MoveKind.ASSOCIAHEDRON:
        result = ThetaPair(lam0, ornamentation_join(tree, m1.upper.rho, m2.upper.rho))
    else:
        p, q = m1.witnesses
        t, t_next = m2.witnesses
        rho2 = m2.upper.rho
        if len({p, q, t, t_next}) == 4:
            result = ThetaPair(m1.upper.lam, rho2)
        elif q == t:
            # rho(p) then the grown rho2(t): swap them
            lam = _swap_adjacent_blocks(lam0, p0.block(p), m2.upper.block(t))
            result = ThetaPair(lam, rho2)
        elif p == t_next and not tree.leq(t, q):
            lam = _swap_adjacent_blocks(lam0, m2.upper.block(t), p0.block(q))
            result = ThetaPair(lam, rho2)
        elif p == t_next:
            rho = list(rho0)
            rho[t] = rho0[t] | rho0[p] | rho0[q]
            result = ThetaPair(m1.upper.lam, tuple(rho))
        else:
            raise TheoremViolation("unexpected witness coincidence in mixed case",
                                   {"tree": str(tree), "p0": pair_to_json(p0),
                                    "perm": [p, q], "assoc": [t, t_next]})
    problem = theta_violation(tree, result)
    if problem:
        raise TheoremViolation(f"join construction left Theta: {problem}",
                               {"tree": str(tree), "p0": pair_to_json(p0),
                                "p1": pair_to_json(p1), "p2": pair_to_json(p2)})
    return result


# ---------------------------------------------------------------------------
# forced extrema of the sets attached to a cover


def _greedy_max_extension(n: int, edges: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    """Weak-order maximum of the linear extensions of ``edges`` on 1..n.

    Repeatedly placing the largest currently-minimal letter yields the
    maximum whenever the set of extensions has one.
    """
    preds = [0] * (n + 1)
    succ: list[list[int]] = [[] for _ in range(n + 1)]
    for a, b in set(edges):
        succ[a].append(b)
        preds[b] += 1
    ready = {v for v in range(1, n + 1) if preds[v] == 0}
    word = []
    while ready:
        v = max(ready)
        ready.remove(v)
        word.append(v)
        for w in succ[v]:
            preds[w] -= 1
            if preds[w] == 0:
                ready.add(w)
    if len(word) != n:
        raise TheoremViolation("ordering constraints are cyclic")
    return tuple(word)


def _forest_edges(tree: PlaneTree) -> list[tuple[int, int]]:
    return [(tree.parent[v], v) for v in range(1, tree.n + 1) if tree.parent[v] > 0]


def _require_unary_off_branch(tree: PlaneTree):
    if not has_unary_off_branch(tree):
        raise ValueError(
            "permutohedron covers only have forced extrema when every vertex off "
            f"the rightmost branch has at most one child; {tree} does not")


def perm_move_frames(lam1: Sequence[int], lam2: Sequence[int], p: int, q: int, u: int, z: int):
    """Four vertex sets attached to a permutohedron cover ``lam1 < lam2``.

    The first two split ``{z <= x < q}`` by whether x precedes or follows q in
    ``lam1``; the last two are the letters of ``[u, q]`` weakly left of q and
    weakly right of u in ``lam2``.
    """
    pos1 = {v: i for i, v in enumerate(lam1)}
    pos2 = {v: i for i, v in enumerate(lam2)}
    if u < p or not z <= p:
        raise ValueError("expected z <= p <= u")
    before_q = frozenset(x for x in lam1 if z <= x < q and pos1[x] < pos1[q])
    after_q = frozenset(y for y in lam1 if z <= y < q and pos1[q] < pos1[y])
    left = frozenset(i for i in lam2 if u <= i <= q and pos2[i] <= pos2[q])
    right = frozenset(i for i in lam2 if u <= i <= q and pos2[u] <= pos2[i])
    return before_q, after_q, left, right


def _perm_frame_vertices(tree: PlaneTree, move: CoverMove) -> tuple[int, int, int, int]:
    p, q = move.witnesses
    branch = mask_of(rightmost_branch(tree))
    # vertices off the rightmost branch on the path from the root to p
    off = tree.ancestors[p] & ~branch & ~1
    if not off:
        raise TheoremViolation("p lies on the rightmost branch", {"tree": str(tree), "p": p})
    return p, q, highest(move.lower.rho[p]), lowest(off)


def forced_max_of_difference(tree: PlaneTree, move: CoverMove) -> ThetaPair:
    """Maximum of ``up(lower) - up(upper)``, built directly from the move."""
    n = tree.n
    lam1, rho1 = move.lower.lam, move.lower.rho
    desc = tree.descendants
    rho = list(desc)
    rho[0] = 0
    if move.kind is MoveKind.ASSOCIAHEDRON:
        t, t_next = move.witnesses
        pos = move.lower.position
        kept = 0
        for a in members(desc[t] & ~desc[t_next]):
            # (a, t_next) is an inversion only when a < t_next and a comes later
            if not (a < t_next and pos[t_next] < pos[a]):
                kept |= 1 << a
        for a in members(kept):
            rho[a] = desc[a] & kept
        inv = set()
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                # every descendant of t left out of the block must follow it
                keep = (kept >> i & 1 and (desc[t] & ~kept) >> j & 1) or tree.leq(i, j)
                if not keep:
                    inv.add((i, j))
        lam = from_inversions(inv, n)
    else:
        _require_unary_off_branch(tree)
        p, q, u, z = _perm_frame_vertices(tree, move)
        before_q, after_q, _, _ = perm_move_frames(lam1, move.upper.lam, p, q, u, z)
        after_mask = mask_of(after_q)
        for x in before_q:
            rho[x] = desc[x] & ~(desc[q] | after_mask)
        block_q = members(rho1[q])
        edges = _forest_edges(tree)
        edges += [(x, b) for x in before_q for b in block_q]
        edges += [(b, y) for b in block_q for y in after_q]
        lam = _greedy_max_extension(n, edges)
    result = ThetaPair(lam, tuple(rho))
    problem = theta_violation(tree, result)
    if problem:
        raise TheoremViolation(f"forced maximum left Theta: {problem}",
                               {"tree": str(tree), "lower": pair_to_json(move.lower),
                                "upper": pair_to_json(move.upper)})
    return result


def forced_min_of_difference(tree: PlaneTree, move: CoverMove) -> ThetaPair:
    """Minimum of ``down(upper) - down(lower)``, built directly from the move."""
    n = tree.n
    rho1 = move.lower.rho
    if move.kind is MoveKind.ASSOCIAHEDRON:
        t, t_next = move.witnesses
        core = (1 << t_next) | (rho1[t] & ((1 << t_next) - 1))
        rho = list(rho_min(tree))
        rho[t] = core
        rest = [v for v in range(t, n + 1) if not core >> v & 1]
        lam = tuple(range(1, t)) + members(core) + tuple(rest)
    else:
        _require_unary_off_branch(tree)
        p, q, u, z = _perm_frame_vertices(tree, move)
        _, _, left, right = perm_move_frames(move.lower.lam, move.upper.lam, p, q, u, z)
        lam = tuple(range(1, u)) + tuple(sorted(left)) + tuple(sorted(right)) + tuple(range(q + 1, n + 1))
        rho = list(rho_min(tree))
    result = ThetaPair(lam, tuple(rho))
    problem = theta_violation(tree, result)
    if problem:
        raise TheoremViolation(f"forced minimum left Theta: {problem}",
                               {"tree": str(tree), "lower": pair_to_json(move.lower),
                                "upper": pair_to_json(move.upper)})
    return result


# ---------------------------------------------------------------------------
# serialization


def pair_to_json(pair: ThetaPair) -> dict:
    return {
        "lambda": list(pair.lam),
        "rho": {str(v): list(members(pair.rho[v])) for v in range(1, pair.n + 1)},
    }


def pair_from_json(data: dict | str) -> ThetaPair:
    if isinstance(data, str):
        data = json.loads(data)
    lam = tuple(data["lambda"])
    rho = [0] * (len(lam) + 1)
    for v, ms in data["rho"].items():
        rho[int(v)] = mask_of(ms)
    return ThetaPair(lam, tuple(rho))


def pair_to_dot(tree: PlaneTree, pair: ThetaPair, name: str = "theta") -> str:
    """The forest with each non-singleton ornament drawn as a cluster."""
    ornaments = sorted({m for m in pair.rho[1:] if m & (m - 1)}, key=lambda m: bin(m).count("1"))
    # laminar family: the container of an ornament is the smallest one strictly above it
    container = {m: next((o for o in ornaments if o != m and m & o == m), None) for m in ornaments}
    home = {v: next((o for o in ornaments if o >> v & 1), None) for v in range(1, tree.n + 1)}
    lines = [f'digraph "{name}" {{', "  rankdir=BT;",
             f'  label="lambda = {" ".join(map(str, pair.lam))}";']

    def emit(m: int | None, indent: str):
        for o in ornaments:
            if container[o] == m:
                lines.append(f"{indent}subgraph cluster_{lowest(o)} {{")
                lines.append(f'{indent}  color=red; label="rho({lowest(o)})";')
                emit(o, indent + "  ")
                lines.append(f"{indent}}}")
        for v in range(1, tree.n + 1):
            if home[v] == m:
                lines.append(f'{indent}v{v} [label="{v}"];')

    emit(None, "  ")
    for a, b in _forest_edges(tree):
        lines.append(f"  v{a} -> v{b} [dir=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
