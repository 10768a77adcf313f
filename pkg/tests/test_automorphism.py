import json
from collections import Counter

import pytest
from hypothesis import given, strategies as st
from sympy.combinatorics import Permutation

from arboreal import automorphism as A
from arboreal.errors import NotTreeRespecting, OutOfRange, ShapeMismatch
from arboreal.tree_index import TreeShape, path_of_index, leaf_index


def elements(d, n):
    return st.integers(0, 2 ** 32).map(lambda s: A.random_automorphism(TreeShape(d, n), s))


def swap(n=1):
    return A.rooted((1, 0), n)


def test_small_laws():
    assert A.compose(swap(), swap()).is_identity()
    assert A.invert(swap()) == swap()
    e = A.identity(3, 2)
    assert A.invert(e) == e
    assert A.to_leaf_permutation(e) == tuple(range(9))


@given(elements(3, 3), elements(3, 3))
def test_leaf_permutation_is_homomorphism(a, b):
    pa, pb = A.to_leaf_permutation(a), A.to_leaf_permutation(b)
    assert A.to_leaf_permutation(A.compose(a, b)) == tuple(pa[pb[i]] for i in range(27))
    for i in range(27):
        assert A.act_on_leaf(A.compose(a, b), i) == A.act_on_leaf(a, A.act_on_leaf(b, i))


@given(elements(3, 4))
def test_inverse_and_identity(a):
    e = A.identity(3, 4)
    assert A.compose(A.invert(a), a) == e == A.compose(a, A.invert(a))
    assert A.compose(a, e) == a


def test_compose_against_leaf_oracle():
    a = A.rooted((1, 2, 0), 2)
    b = A.node((0, 1, 2), [A.rooted((1, 0, 2), 1), A.identity(3, 1), A.identity(3, 1)])
    pa, pb = A.to_leaf_permutation(a), A.to_leaf_permutation(b)
    assert A.to_leaf_permutation(A.compose(a, b)) == tuple(pa[pb[i]] for i in range(9))
    # b moves leaf 0 = path (0, 0) to path (1, 0); then a rotates the root branch
    assert A.act_on_leaf(b, 0) == 3
    assert A.act_on_leaf(A.compose(a, b), 0) == 4


def test_act_on_leaf():
    assert A.act_on_leaf(A.rooted((1, 2, 0), 1), 0) == 1
    a = A.rooted((1, 0, 2), 2)
    shape = TreeShape(3, 2)
    for x in range(3):
        # the root acts on the last path component (the root branch)
        assert A.act_on_leaf(a, leaf_index((x, 0), shape)) == leaf_index((x, 1), shape)
    with pytest.raises(OutOfRange):
        A.act_on_leaf(a, 9)


def test_root_swap_leaf_permutation():
    # root branch is the low digit, so the swap exchanges 0<->1 and 2<->3
    assert A.to_leaf_permutation(swap(2)) == (1, 0, 3, 2)


def test_from_leaf_permutation():
    s = TreeShape(2, 2)
    assert A.from_leaf_permutation((0, 1, 2, 3), s).is_identity()
    a = A.from_leaf_permutation((2, 1, 0, 3), s)
    assert a.root == (0, 1) and a.children[0] == swap() and a.children[1].is_identity()
    cyc = A.from_leaf_permutation((1, 2, 3, 0), s)
    assert A.to_leaf_permutation(cyc) == (1, 2, 3, 0)
    with pytest.raises(NotTreeRespecting):
        A.from_leaf_permutation((1, 0, 2, 3), s)
    with pytest.raises(ShapeMismatch):
        A.from_leaf_permutation((0, 1, 2), s)


def test_injective_and_orders():
    for (d, n), size in {(2, 2): 8, (2, 3): 128, (3, 1): 6, (3, 2): 1296}.items():
        elems = A.all_automorphisms(TreeShape(d, n))
        assert len(elems) == size
        assert len({A.to_leaf_permutation(a) for a in elems}) == size
        if size <= 1296:
            assert all(A.from_leaf_permutation(A.to_leaf_permutation(a), TreeShape(d, n)) == a
                       for a in elems)


def test_group_axioms_exhaustive():
    elems = A.all_automorphisms(TreeShape(2, 2))
    e = A.identity(2, 2)
    for a in elems:
        assert A.compose(a, A.invert(a)) == e
        for b in elems:
            for c in elems:
                assert A.compose(A.compose(a, b), c) == A.compose(a, A.compose(b, c))


@given(elements(3, 4), elements(3, 4))
def test_restrict_is_homomorphism(a, b):
    for m in range(5):
        assert A.restrict(A.compose(a, b), m) == A.compose(A.restrict(a, m), A.restrict(b, m))
    assert A.restrict(a, 4) == a
    assert A.restrict(a, 0) == A.identity(3, 0)
    assert A.restrict(a, 1).root == a.root


@given(elements(3, 4))
def test_decompose_round_trip(a):
    for m in range(5):
        top, hanging = A.decompose(a, m)
        assert len(hanging) == 3 ** m and top == A.restrict(a, m)
        assert A.recompose(top, hanging) == a
    top, hanging = A.decompose(a, 0)
    assert top.is_identity() and hanging == [a]


def test_decompose_indexing():
    # hanging[k] sits below the level-m vertex whose leaves are = k mod d**m
    a = A.random_automorphism(TreeShape(3, 3), 7)
    top, hanging = A.decompose(a, 1)
    assert hanging == list(a.children)


def test_record_round_trip(sampler):
    for a in sampler(3, 3, 20):
        text = json.dumps(A.to_record(a))
        assert A.from_record(json.loads(text)) == a
    assert A.from_record({"perm": [], "children": []}, 3) == A.identity(3, 0)
    with pytest.raises(ValueError):
        A.from_record({"perm": [0, 0], "children": []})


def test_random_uniform_levels():
    counts = Counter(A.random_automorphism(TreeShape(3, 1), s).root for s in range(6000))
    assert len(counts) == 6 and all(abs(c - 1000) <= 120 for c in counts.values())
    import random
    rng = random.Random(3)
    counts = Counter(A.random_automorphism(TreeShape(2, 2), rng) for _ in range(8000))
    assert len(counts) == 8 and all(abs(c - 1000) <= 150 for c in counts.values())
    assert A.random_automorphism(TreeShape(3, 0), 1).is_identity()
    assert A.random_automorphism(TreeShape(3, 3), 5) == A.random_automorphism(TreeShape(3, 3), 5)


def test_immutable():
    a = A.identity(2, 1)
    with pytest.raises(AttributeError):
        a.root = (1, 0)


def test_commutator_and_power(sampler):
    for a, b in zip(sampler(3, 2, 10), sampler(3, 2, 10)):
        c = A.commutator(a, b)
        pa = Permutation(list(A.to_leaf_permutation(a)))
        pb = Permutation(list(A.to_leaf_permutation(b)))
        # sympy composes left to right, so p*q means p first
        want = pb ** -1 * pa ** -1 * pb * pa
        assert list(A.to_leaf_permutation(c)) == want.array_form
        assert A.power(a, pa.order()).is_identity()
        assert A.power(a, -1) == A.invert(a)
