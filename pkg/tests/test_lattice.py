import itertools
import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from operahedra.errors import NotALatticeError, SizeLimitError
from operahedra.lattice import (
    MAX_ELEMENTS,
    FinitePoset,
    are_isomorphic,
    barnard_join_semidistributive,
    barnard_meet_semidistributive,
    find_isomorphism,
    height,
    interval,
    is_distributive,
    is_extremal,
    is_join_semidistributive,
    is_lattice,
    is_lattice_bez,
    is_meet_semidistributive,
    is_trim,
    join_irreducibles,
    left_modular_elements,
    meet_irreducibles,
    meet_join_tables,
    poset_from_json,
    poset_to_dot,
    poset_to_json,
)
from operahedra.nestings import mn_poset
from operahedra.oracles import tamari_poset, weak_order_poset
from operahedra.trees import enumerate_trees

BOOL2 = FinitePoset("0abt", [(0, 1), (0, 2), (1, 3), (2, 3)])
N5 = FinitePoset("0abct", [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
M3 = FinitePoset("0abct", [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
BOWTIE = FinitePoset("abcd", [(0, 2), (0, 3), (1, 2), (1, 3)])  # no joins for a, b


def divisors(n):
    return FinitePoset.from_leq([d for d in range(1, n + 1) if n % d == 0], lambda a, b: b % a == 0)


def test_classic_small_lattices():
    assert is_distributive(BOOL2) and is_trim(BOOL2)
    assert not is_distributive(N5) and is_meet_semidistributive(N5) and is_join_semidistributive(N5)
    assert is_trim(N5) and left_modular_elements(N5) == [0, 1, 2, 4]
    assert not is_meet_semidistributive(M3) and not is_join_semidistributive(M3)
    assert not barnard_meet_semidistributive(M3) and not barnard_join_semidistributive(M3)
    assert not is_extremal(M3) and height(M3) == 2
    assert join_irreducibles(M3) == meet_irreducibles(M3) == [1, 2, 3]


def test_non_lattice_detection():
    assert not is_lattice(BOWTIE) and not is_lattice_bez(BOWTIE)
    assert meet_join_tables(BOWTIE) is None
    with pytest.raises(NotALatticeError) as info:
        join_irreducibles(BOWTIE)
    assert info.value.witness is not None


def test_divisor_lattice():
    D = divisors(60)
    assert is_lattice(D) and is_distributive(D)
    meet, join = meet_join_tables(D)
    i = {x: k for k, x in enumerate(D.elements)}
    assert D.elements[join[i[4], i[6]]] == 12 and D.elements[meet[i[4], i[6]]] == 2


def test_validation():
    with pytest.raises(ValueError):
        FinitePoset("abc", [(0, 1), (1, 2), (0, 2)])  # not reduced
    with pytest.raises(ValueError):
        FinitePoset("ab", [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        FinitePoset.from_leq([1, 2, 3], lambda a, b: a == b or (a, b) in {(1, 2), (2, 3)})
    with pytest.raises(SizeLimitError):
        FinitePoset(range(MAX_ELEMENTS + 1), [])


def test_interval_and_isomorphism():
    D = divisors(12)
    part = interval(D, 2, 12)
    assert sorted(part.elements) == [2, 4, 6, 12]
    assert are_isomorphic(part, BOOL2)
    assert not are_isomorphic(N5, M3)
    f = find_isomorphism(tamari_poset(3), N5)
    assert f is not None and sorted(f) == list(range(5))


def test_json_and_dot():
    P = mn_poset(enumerate_trees(3)[2])
    data = json.loads(poset_to_json(P))
    assert set(data) == {"elements", "covers", "labels"}
    assert set(data["labels"]) <= {"permutohedron", "associahedron"}
    Q = poset_from_json(json.dumps({"elements": list("0abt"), "covers": [[0, 1], [0, 2], [1, 3], [2, 3]]}))
    assert are_isomorphic(Q, BOOL2)
    dot = poset_to_dot(P)
    assert dot.count("rank=same") == height(P) + 1
    assert ("color=purple" in dot) and ("color=orange" in dot)


@st.composite
def random_posets(draw):
    n = draw(st.integers(1, 8))
    pairs = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))
    R = np.eye(n, dtype=bool)
    for a, b in pairs:
        if a < b:
            R[a, b] = True
    for k in range(n):  # transitive closure
        R |= R[:, [k]] & R[[k], :]
    P = FinitePoset.from_leq(list(range(n)), lambda a, b: bool(R[a, b]))
    if draw(st.booleans()):
        # bound it so that most samples are lattices
        top, bottom = n, n + 1
        covers = list(P.covers) + [(i, top) for i in P.maximal()] + [(bottom, i) for i in P.minimal()]
        P = FinitePoset(list(range(n + 2)), covers)
    return P


GENERATED = ([mn_poset(t) for n in range(1, 5) for t in enumerate_trees(n)]
             + [tamari_poset(n) for n in range(1, 5)] + [weak_order_poset(n) for n in range(1, 5)])


@given(st.one_of(random_posets(), st.sampled_from(GENERATED)))
def test_bez_agrees_with_tables(P):
    assert is_lattice_bez(P) == is_lattice(P)


def _lattices():
    return st.one_of(random_posets().filter(is_lattice), st.sampled_from(GENERATED))


@given(_lattices())
def test_lattice_identities(P):
    meet, join = meet_join_tables(P)
    idx = range(len(P))
    R = P.leq_matrix
    for a, b in itertools.product(idx, repeat=2):
        assert join[a, meet[a, b]] == a and meet[a, join[a, b]] == a  # absorption
        assert join[a, b] == join[b, a] and meet[a, b] == meet[b, a]
        assert R[a, join[a, b]] and R[meet[a, b], a]
    assert height(P) <= len(join_irreducibles(P))
    assert height(P) <= len(meet_irreducibles(P))


@given(_lattices())
def test_semidistributive_consequences(P):
    sd = is_meet_semidistributive(P) and is_join_semidistributive(P)
    assert is_meet_semidistributive(P) == barnard_meet_semidistributive(P)
    assert is_join_semidistributive(P) == barnard_join_semidistributive(P)
    if sd:
        assert len(join_irreducibles(P)) == len(meet_irreducibles(P))
    if is_distributive(P):
        assert sd and is_trim(P)


@given(_lattices(), st.randoms(use_true_random=False))
def test_isomorphism_is_invariant_under_relabelling(P, rnd):
    order = list(range(len(P)))
    rnd.shuffle(order)
    pos = {old: new for new, old in enumerate(order)}
    Q = FinitePoset([P.elements[i] for i in order], [(pos[a], pos[b]) for a, b in P.covers])
    f = find_isomorphism(P, Q)
    assert f is not None
    assert {(f[a], f[b]) for a, b in P.covers} == set(Q.covers)
