"""Acceptance criteria, one test each.

Run with ``pytest tests/test_acceptance.py`` (a PASS/FAIL line per criterion
is printed in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import itertools
import sys
import time

import pytest

from operahedra import harness
from operahedra.lattice import (
    barnard_join_semidistributive,
    barnard_meet_semidistributive,
    height,
    is_join_semidistributive,
    is_lattice,
    is_lattice_bez,
    is_meet_semidistributive,
    join_irreducibles,
    meet_irreducibles,
    meet_join_tables,
)
from operahedra._bits import mask_of
from operahedra.nestings import mn_poset
from operahedra.oracles import tamari_poset, weak_order_poset
from operahedra.sorting import (
    all_permutations,
    identity,
    inversions,
    omega,
    omega_inverse,
    stack_inversion_criterion,
    stack_preimages,
    stack_sort,
    verify_broom_iso,
)
from operahedra.theta import ThetaPair, perm_move_frames
from operahedra.trees import broom, catalan, chain, claw, enumerate_trees, parse_tree

pytestmark = pytest.mark.slow


def _harness(name: str, budget: float):
    start = time.perf_counter()
    report = harness.run_theorem(name, 5)
    elapsed = time.perf_counter() - start
    assert report.per_size == {1: 1, 2: 2, 3: 5, 4: 14, 5: 42}
    assert report.failures == [], report.failures[:3]
    assert elapsed < budget


def test_every_operahedron_poset_is_a_lattice_isomorphic_to_theta():
    """every MN(T), n <= 5, is a lattice (BEZ + tables) and Psi is a move-preserving isomorphism"""
    _harness("lattice", 120)


def test_special_case_isomorphisms():
    """MN(chain) = Tamari and MN(claw) = Weak(S_n), n <= 5"""
    start = time.perf_counter()
    sizes_chain, sizes_claw = [], []
    for n in range(1, 6):
        A, B = mn_poset(chain(n)), mn_poset(claw(n))
        sizes_chain.append(len(A))
        sizes_claw.append(len(B))
        assert harness.check_special(n) == []
    assert sizes_chain == [1, 2, 5, 14, 42]
    assert sizes_claw == [1, 2, 6, 24, 120]
    assert [len(tamari_poset(n)) for n in range(1, 6)] == sizes_chain
    assert [len(weak_order_poset(n)) for n in range(1, 6)] == sizes_claw
    assert time.perf_counter() - start < 60


def test_semidistributivity_characterization():
    """definitional, Barnard and degree-condition semidistributivity agree; the tree ((()())()) fails both halves"""
    _harness("semidistributive", 300)
    M = mn_poset(parse_tree("((()())())"))
    assert not is_meet_semidistributive(M) and not is_join_semidistributive(M)
    assert not barnard_meet_semidistributive(M) and not barnard_join_semidistributive(M)


def test_trim_characterization():
    """trim iff root has <= 2 children and others <= 1; trim lattices have height = |J| = |M| = C(n,2)"""
    _harness("trim", 300)


def test_contractions_give_intervals():
    """nestings containing a contracted-edge tube form an interval isomorphic to MN(T')"""
    _harness("intervals", 180)


def test_distributivity_iff_small():
    """MN(T) distributive iff n <= 2"""
    _harness("distributive", 300)


def test_forced_extrema_of_cover_differences():
    """forced extrema equal brute-force unique extrema on trees with unary off-branch vertices; worked frames"""
    _harness("extrema", 300)
    lam1 = (1, 2, 4, 8, 9, 12, 13, 18, 22, 23, 25, 24, 16, 14, 5, 6, 19, 20, 17, 21, 3, 7, 15, 10, 11)
    lam2 = (1, 2, 4, 8, 9, 12, 13, 18, 22, 23, 25, 24, 16, 14, 19, 20, 5, 6, 17, 21, 3, 7, 15, 10, 11)
    X, Y, ZL, ZR = perm_move_frames(lam1, lam2, p=5, q=19, u=6, z=4)
    assert X == {4, 5, 6, 8, 9, 12, 13, 14, 16, 18}
    assert Y == {7, 10, 11, 15, 17}
    assert ZL == {8, 9, 12, 13, 14, 16, 18, 19}
    assert ZR == {6, 7, 10, 11, 15, 17}


def test_broom_isomorphism_with_stack_preimages():
    """Omega is an order isomorphism for all 1 <= k <= n <= 6; worked example 374621598 round-trips"""
    start = time.perf_counter()
    for n in range(1, 7):
        for k in range(1, n + 1):
            report = verify_broom_iso(k, n)
            assert report.ok, report.violation
    rho = [0] + [1 << v for v in range(1, 10)]
    rho[1], rho[3], rho[4] = mask_of({1, 2}), mask_of({3, 4, 5, 6, 8, 9}), mask_of({4, 5, 8, 9})
    pair = ThetaPair((1, 2, 3, 4, 5, 9, 8, 6, 7), tuple(rho))
    sigma = omega(broom(4, 9), pair)
    assert sigma == (3, 7, 4, 6, 2, 1, 5, 9, 8)
    assert omega_inverse(sigma, 4, 9) == pair
    assert time.perf_counter() - start < 120


def test_stack_sorting_facts():
    """s(316452) = 134256; |s^-1(id_n)| = Catalan(n), n <= 8; stack inversion criterion, n <= 7"""
    assert stack_sort((3, 1, 6, 4, 5, 2)) == (1, 3, 4, 2, 5, 6)
    for n in range(1, 9):
        assert len(stack_preimages([identity(n)], n)) == catalan(n)
    for n in range(1, 8):
        for sigma in all_permutations(n):
            inv = inversions(stack_sort(sigma))
            for a, b in itertools.combinations(range(1, n + 1), 2):
                assert stack_inversion_criterion(sigma, a, b) == ((a, b) in inv)


def test_lattice_kit_property_suite():
    """absorption, BEZ vs tables, |J| = |M| under semidistributivity, height <= |J| on all generated lattices"""
    lattices = [mn_poset(t) for n in range(1, 6) for t in enumerate_trees(n)]
    lattices += [tamari_poset(n) for n in range(1, 6)] + [weak_order_poset(n) for n in range(1, 6)]
    for P in lattices:
        assert is_lattice_bez(P) == is_lattice(P) == True  # noqa: E712
        meet, join = meet_join_tables(P)
        for a, b in itertools.product(range(len(P)), repeat=2):
            assert join[a, meet[a, b]] == a and meet[a, join[a, b]] == a
        J, M = join_irreducibles(P), meet_irreducibles(P)
        if is_meet_semidistributive(P) and is_join_semidistributive(P):
            assert len(J) == len(M)
        assert height(P) <= len(J)


CRITERIA = [obj for name, obj in sorted(globals().items()) if name.startswith("test_")]


if __name__ == "__main__":
    failed = 0
    for test in sorted(CRITERIA, key=lambda f: f.__code__.co_firstlineno):
        start = time.perf_counter()
        try:
            test()
            status = "PASS"
        except Exception as exc:  # report and keep going
            status = f"FAIL ({type(exc).__name__}: {exc})"
            failed += 1
        print(f"{status.split(' ')[0]:4}  {test.__name__}  [{time.perf_counter() - start:.1f}s]  {test.__doc__}"
              + ("" if status == "PASS" else "\n      " + status))
    sys.exit(1 if failed else 0)
