from itertools import product

import pytest

from arboreal.errors import OutOfRange
from arboreal.tree_index import (TreeShape, block_of, blocks, leaf_index, path_of_index,
                                 same_subtree, vertex_offset)


def test_shape_counts():
    s = TreeShape(3, 2)
    assert (s.leaf_count, s.vertex_count, s.internal_vertex_count) == (9, 13, 4)
    assert TreeShape(2, 0).vertex_count == 1


@pytest.mark.parametrize("path,shape,index", [
    ((0, 0), TreeShape(3, 2), 0),
    ((1, 2), TreeShape(3, 2), 5),
    ((1, 1, 1), TreeShape(2, 3), 7),
])
def test_leaf_index(path, shape, index):
    assert leaf_index(path, shape) == index
    assert path_of_index(index, shape) == path


def test_path_of_index_binary():
    assert path_of_index(6, TreeShape(2, 3)) == (1, 1, 0)


@pytest.mark.parametrize("d", range(2, 6))
@pytest.mark.parametrize("n", range(0, 7))
def test_round_trip_exhaustive(d, n):
    if d ** n > 4096:
        pytest.skip("large")
    shape = TreeShape(d, n)
    for i in range(d ** n):
        assert leaf_index(path_of_index(i, shape), shape) == i
    for path in product(range(d), repeat=n) if d ** n <= 256 else ():
        assert path_of_index(leaf_index(path, shape), shape) == path


def test_errors():
    s = TreeShape(3, 2)
    with pytest.raises(OutOfRange):
        leaf_index((0,), s)
    with pytest.raises(OutOfRange):
        leaf_index((0, 3), s)
    with pytest.raises(OutOfRange):
        path_of_index(9, s)
    with pytest.raises(OutOfRange):
        same_subtree(0, 1, 3, s)
    with pytest.raises(OutOfRange):
        TreeShape(1, 2)


def test_same_subtree_examples():
    s = TreeShape(3, 2)
    assert same_subtree(2, 5, 1, s)
    assert all(same_subtree(i, j, 0, s) for i in range(9) for j in range(9))
    assert same_subtree(4, 4, 2, s)
    assert not same_subtree(4, 5, 2, s)


@pytest.mark.parametrize("d,n", [(2, 4), (3, 3)])
def test_blocks_partition(d, n):
    s = TreeShape(d, n)
    for m in range(n + 1):
        bl = blocks(m, s)
        assert len(bl) == d ** m
        assert all(len(b) == d ** (n - m) for b in bl)
        assert sorted(x for b in bl for x in b) == list(range(d ** n))
        for i in range(d ** n):
            for j in range(d ** n):
                assert same_subtree(i, j, m, s) == (block_of(i, m, s) == block_of(j, m, s))


def test_vertex_offset():
    assert [vertex_offset(k, 3) for k in range(4)] == [0, 1, 4, 13]
