import itertools
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from operahedra._bits import mask_of
from operahedra.errors import TheoremViolation
from operahedra.lattice import meet_join_tables, unique_maximal, unique_minimal
from operahedra.oracles import ornamentation_join_bruteforce, theta_poset
from operahedra.theta import (
    MoveKind,
    ThetaPair,
    enumerate_linear_extensions,
    enumerate_ornamentations,
    enumerate_theta,
    find_move,
    forced_max_of_difference,
    forced_min_of_difference,
    is_linear_extension,
    is_theta_pair,
    join_of_covers,
    ornamentation_join,
    ornamentation_leq,
    ornamentation_meet,
    pair_from_json,
    pair_to_dot,
    pair_to_json,
    perm_move_frames,
    psi,
    psi_inverse,
    rho_max,
    rho_min,
    theta_covers,
    theta_violation,
)
from operahedra.trees import broom, chain, claw, enumerate_trees, has_unary_off_branch, parse_tree

from conftest import small_trees, tiny_trees

SPLIT_TREE = parse_tree("((()())())")


def test_linear_extensions_of_split_tree():
    exts = enumerate_linear_extensions(SPLIT_TREE)
    assert len(exts) == 8
    assert exts == sorted(exts)
    assert all(is_linear_extension(SPLIT_TREE, e) for e in exts)
    assert not is_linear_extension(SPLIT_TREE, (2, 1, 3, 4))


@pytest.mark.parametrize("tree, count", [
    (chain(3), 5), (claw(3), 6), (SPLIT_TREE, 18), (broom(2, 3), 6), (claw(4), 24), (chain(4), 14),
])
def test_theta_counts(tree, count):
    assert len(enumerate_theta(tree)) == count


def test_broom_2_3_pairs():
    by_ext = Counter(p.lam for p in enumerate_theta(broom(2, 3)))
    assert by_ext == {(1, 2, 3): 3, (1, 3, 2): 3}


@given(tiny_trees)
def test_enumeration_matches_filtered_product(t):
    brute = sorted(ThetaPair(lam, rho)
                   for lam in enumerate_linear_extensions(t)
                   for rho in enumerate_ornamentations(t)
                   if is_theta_pair(t, ThetaPair(lam, rho)))
    assert brute == enumerate_theta(t)


@given(small_trees)
def test_psi_roundtrip(t):
    for p in enumerate_theta(t):
        N = psi_inverse(t, p)
        assert len(N) == t.n
        assert psi(t, N) == p


@given(small_trees)
def test_covers_are_the_hasse_diagram(t):
    P = theta_poset(t)
    moves = {(P.index[m.lower], P.index[m.upper]) for p in P.elements for m in theta_covers(t, p)}
    assert moves == set(P.covers)


def test_extremes_of_ornamentations():
    t = SPLIT_TREE
    rhos = enumerate_ornamentations(t)
    assert rho_min(t) in rhos and rho_max(t) in rhos
    assert all(ornamentation_leq(rho_min(t), r) and ornamentation_leq(r, rho_max(t)) for r in rhos)


@given(tiny_trees, st.data())
def test_ornamentation_lattice_operations(t, data):
    rhos = enumerate_ornamentations(t)
    a = data.draw(st.sampled_from(rhos))
    b = data.draw(st.sampled_from(rhos))
    assert ornamentation_join(t, a, b) == ornamentation_join_bruteforce(t, a, b)
    m = ornamentation_meet(t, a, b)
    assert ornamentation_leq(m, a) and ornamentation_leq(m, b)


@pytest.mark.parametrize("tree", [SPLIT_TREE, claw(3), chain(4), parse_tree("((())(()))")], ids=str)
def test_join_of_covers_matches_tables(tree):
    P = theta_poset(tree)
    _, join = meet_join_tables(P)
    for p in P.elements:
        for a, b in itertools.combinations(theta_covers(tree, p), 2):
            expected = P.elements[join[P.index[a.upper], P.index[b.upper]]]
            assert join_of_covers(tree, p, a.upper, b.upper) == expected


def test_move_kinds_on_special_trees():
    for p in enumerate_theta(chain(4)):
        assert all(m.kind is MoveKind.ASSOCIAHEDRON for m in theta_covers(chain(4), p))
    for p in enumerate_theta(claw(4)):
        assert all(m.kind is MoveKind.PERMUTOHEDRON for m in theta_covers(claw(4), p))
    kinds = {m.kind for p in enumerate_theta(SPLIT_TREE) for m in theta_covers(SPLIT_TREE, p)}
    assert kinds == set(MoveKind)


@pytest.mark.parametrize("tree", [t for t in enumerate_trees(4) if has_unary_off_branch(t)], ids=str)
def test_forced_extrema(tree):
    P = theta_poset(tree)
    for p in P.elements:
        for m in theta_covers(tree, p):
            x, y = P.index[m.lower], P.index[m.upper]
            assert forced_max_of_difference(tree, m) == P.elements[unique_maximal(P, x, y)]
            assert forced_min_of_difference(tree, m) == P.elements[unique_minimal(P, x, y)]


def test_forced_extrema_need_condition_v_for_swaps():
    p = enumerate_theta(SPLIT_TREE)[0]
    swap = next(m for m in theta_covers(SPLIT_TREE, p) if m.kind is MoveKind.PERMUTOHEDRON)
    with pytest.raises(ValueError):
        forced_max_of_difference(SPLIT_TREE, swap)


LAM1 = (1, 2, 4, 8, 9, 12, 13, 18, 22, 23, 25, 24, 16, 14, 5, 6, 19, 20, 17, 21, 3, 7, 15, 10, 11)
LAM2 = (1, 2, 4, 8, 9, 12, 13, 18, 22, 23, 25, 24, 16, 14, 19, 20, 5, 6, 17, 21, 3, 7, 15, 10, 11)


def test_permutohedron_frames_worked_example():
    X, Y, ZL, ZR = perm_move_frames(LAM1, LAM2, p=5, q=19, u=6, z=4)
    assert X == {4, 5, 6, 8, 9, 12, 13, 14, 16, 18}
    assert Y == {7, 10, 11, 15, 17}
    assert ZL == {8, 9, 12, 13, 14, 16, 18, 19}
    assert ZR == {6, 7, 10, 11, 15, 17}
    # the bottom of the interval is a permutation below the upper extension
    u, q, n = 6, 19, 25
    low = tuple(range(1, u)) + tuple(sorted(ZL)) + tuple(sorted(ZR)) + tuple(range(q + 1, n + 1))
    assert sorted(low) == list(range(1, n + 1))
    from operahedra.sorting import weak_leq
    assert weak_leq(low, LAM2)


def test_violations_are_named():
    t = chain(2)
    assert theta_violation(t, ThetaPair((2, 1), rho_min(t))) == "lam is not a linear extension of the forest"
    bad = ThetaPair((1, 2, 3), (0, mask_of({1, 3}), 4, 8))
    assert "ornament" in theta_violation(claw(3), bad)
    split = ThetaPair((1, 2, 3), (0, 0b1010, 4, 8))  # {1,3} hung at 1 in chain(3) is not connected
    assert theta_violation(chain(3), split) is not None


def test_find_move_rejects_non_covers():
    ps = enumerate_theta(claw(3))
    with pytest.raises(ValueError):
        find_move(claw(3), ps[0], ps[-1])


def test_join_of_covers_needs_distinct_covers():
    p = enumerate_theta(claw(3))[0]
    up = theta_covers(claw(3), p)[0].upper
    with pytest.raises(ValueError):
        join_of_covers(claw(3), p, up, up)


@given(small_trees, st.data())
def test_json_roundtrip(t, data):
    p = data.draw(st.sampled_from(enumerate_theta(t)))
    assert pair_from_json(pair_to_json(p)) == p


def test_dot_draws_ornaments():
    p = max(enumerate_theta(SPLIT_TREE), key=lambda q: sum(bin(r).count("1") for r in q.rho))
    dot = pair_to_dot(SPLIT_TREE, p)
    assert dot.startswith('digraph "theta"') and "cluster_1" in dot and "color=red" in dot
    assert dot.count("dir=none") == 2


def test_theta_violation_type():
    assert issubclass(TheoremViolation, AssertionError)
