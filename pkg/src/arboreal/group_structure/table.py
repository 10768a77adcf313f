"""Materialized permutation groups backed by numpy arrays.

Elements are rows of an ``(N, k)`` integer array, sorted by their raw bytes
so that lookup is a binary search.  Products are computed row-wise and looked
up again, so no ``N x N`` multiplication table is ever stored.
"""

import numpy as np

from ..errors import TooLarge

DEFAULT_LIMIT = 10 ** 6


def _dtype(k):
    return np.uint8 if k <= 256 else np.uint16 if k <= 65536 else np.uint32


def _keys(rows):
    rows = np.ascontiguousarray(rows)
    return rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))).ravel()


class FiniteGroupTable:
    """A finite group of permutations of ``{0, ..., k-1}``.

    ``compose(p, q)[x] = p[q[x]]`` as elsewhere in the package.
    """

    def __init__(self, elements, *, check=True):
        arr = np.asarray(elements)
        if arr.ndim != 2 or arr.shape[0] == 0:
            raise ValueError("need a non-empty 2-d array of permutations")
        arr = arr.astype(_dtype(arr.shape[1]))
        keys = _keys(arr)
        order = np.argsort(keys, kind="stable")
        arr = np.ascontiguousarray(arr[order])
        keys = _keys(arr)
        if len(keys) > 1 and np.any(keys[1:] == keys[:-1]):
            raise ValueError("duplicate elements")
        self.elements = arr
        self.elements.setflags(write=False)
        self._keys = keys
        self.degree = arr.shape[1]
        ident = np.arange(self.degree, dtype=arr.dtype)[None, :]
        self.identity = int(self.index(ident)[0]) if self._contains(ident)[0] else -1
        if self.identity < 0:
            raise ValueError("identity missing")
        self.inverses = self.index(np.argsort(arr, axis=1).astype(arr.dtype))
        self._gens = None
        self._classes = None
        if check:
            gens = self.generators
            prod = self.mul(np.arange(len(self))[:, None], np.asarray(gens)[None, :])
            del prod  # mul raises KeyError when a product falls outside

    @classmethod
    def from_generators(cls, gens, limit=DEFAULT_LIMIT):
        """Close a list of permutations under composition (breadth first)."""
        gens = np.asarray([list(g) for g in gens])
        k = gens.shape[1]
        gens = gens.astype(_dtype(k))
        ident = np.arange(k, dtype=gens.dtype)[None, :]
        seen = {ident.tobytes()}
        blocks = [ident]
        frontier = ident
        while len(frontier):
            # rows g[f[x]] for every generator g and frontier element f
            new = np.take_along_axis(np.repeat(gens, len(frontier), axis=0),
                                     np.tile(frontier, (len(gens), 1)).astype(np.intp),
                                     axis=1)
            uniq = np.unique(_keys(new), return_index=True)[1]
            new = new[uniq]
            fresh = [r for r in range(len(new)) if new[r].tobytes() not in seen]
            new = new[fresh]
            for row in new:
                seen.add(row.tobytes())
            if len(seen) > limit:
                raise TooLarge(f"group exceeds {limit} elements")
            blocks.append(new)
            frontier = new
        return cls(np.concatenate(blocks), check=False)

    def __len__(self):
        return len(self.elements)

    def element(self, i) -> tuple:
        return tuple(int(x) for x in self.elements[i])

    def _contains(self, rows):
        rows = np.asarray(rows, dtype=self.elements.dtype).reshape(-1, self.degree)
        keys = _keys(rows)
        pos = np.searchsorted(self._keys, keys)
        pos = np.minimum(pos, len(self._keys) - 1)
        return self._keys[pos] == keys

    def contains(self, perm) -> bool:
        return bool(self._contains(np.asarray(perm)[None, :])[0])

    def index(self, rows):
        """Indices of the given permutation rows; ``KeyError`` if one is missing."""
        rows = np.asarray(rows, dtype=self.elements.dtype)
        shape = rows.shape[:-1]
        flat = rows.reshape(-1, self.degree)
        keys = _keys(flat)
        pos = np.searchsorted(self._keys, keys)
        pos = np.minimum(pos, len(self._keys) - 1)
        if not np.all(self._keys[pos] == keys):
            raise KeyError("permutation not in the group")
        return pos.reshape(shape)

    def index_of(self, perm) -> int:
        return int(self.index(np.asarray(perm)[None, :])[0])

    def mul(self, i, j):
        """Index array of ``e_i * e_j`` (broadcasting ``i`` against ``j``)."""
        i, j = np.broadcast_arrays(np.asarray(i), np.asarray(j))
        a = self.elements[i.ravel()]
        b = self.elements[j.ravel()]
        return self.index(np.take_along_axis(a, b.astype(np.intp), axis=1)).reshape(i.shape)

    def conj(self, g, x):
        """``g x g^-1`` as indices."""
        g = np.asarray(g)
        return self.mul(self.mul(g, x), self.inverses[g])

    def commutator(self, x, y):
        """``x y x^-1 y^-1``."""
        return self.mul(self.mul(x, y), self.mul(self.inverses[x], self.inverses[y]))

    def power(self, x, k):
        out = np.full(np.shape(x), self.identity)
        base = np.asarray(x)
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def element_orders(self):
        orders = np.ones(len(self), dtype=np.int64)
        cur = np.arange(len(self))
        done = cur == self.identity
        step = 1
        while not np.all(done):
            cur = self.mul(cur, np.arange(len(self)))
            step += 1
            hit = (cur == self.identity) & ~done
            orders[hit] = step
            done |= hit
        return orders

    # subgroups are boolean masks internally

    def closure_mask(self, gens, start=None):
        """Mask of the subgroup generated by ``gens``.

        ``start`` may be the mask of a subgroup normal in the whole group; the
        result is then the subgroup generated by both.
        """
        gens = np.unique(np.asarray(list(gens), dtype=np.int64))
        mask = np.zeros(len(self), dtype=bool) if start is None else start.copy()
        mask[self.identity] = True
        frontier = np.flatnonzero(mask)
        if len(gens) == 0:
            return mask
        while len(frontier):
            prods = self.mul(frontier[:, None], gens[None, :]).ravel()
            prods = np.unique(prods[~mask[prods]])
            mask[prods] = True
            frontier = prods
        return mask

    @property
    def generators(self) -> list:
        """A small generating set, chosen greedily in a fixed pseudo-random order."""
        if self._gens is None:
            rng = np.random.default_rng(0)
            order = rng.permutation(len(self))
            mask = np.zeros(len(self), dtype=bool)
            mask[self.identity] = True
            gens = []
            for x in order:
                if mask.all():
                    break
                if not mask[x]:
                    gens.append(int(x))
                    mask = self.closure_mask(gens)
            self._gens = gens
        return list(self._gens)

    def conjugacy_labels(self):
        """Label of each element's class: the smallest index in the class."""
        if self._classes is None:
            labels = np.arange(len(self))
            maps = [self.conj(g, np.arange(len(self))) for g in self.generators]
            while True:
                new = labels.copy()
                for cm in maps:
                    np.minimum.at(new, cm, new)
                    new = np.minimum(new, new[cm])
                # pointer jumping keeps labels consistent across iterations
                new = new[new]
                if np.array_equal(new, labels):
                    break
                labels = new
            self._classes = labels
        return self._classes

    def class_representatives(self) -> list:
        return [int(x) for x in np.unique(self.conjugacy_labels())]

    def is_normal_mask(self, mask) -> bool:
        members = np.flatnonzero(mask)
        for g in self.generators:
            if not mask[self.conj(g, members)].all():
                return False
        return True

    def normal_closure_mask(self, elements, start=None):
        """Smallest normal subgroup containing ``elements`` and the normal mask ``start``.

        Grows a generating set one conjugate at a time instead of closing over
        whole conjugacy classes, which can be huge.
        """
        gens = [int(x) for x in np.unique(np.atleast_1d(np.asarray(elements, dtype=np.int64)))]
        mask = self.closure_mask(gens, start)
        while True:
            outside = []
            for g in self.generators:
                images = self.conj(g, np.asarray(gens, dtype=np.int64))
                outside.extend(int(x) for x in images[~mask[images]])
            if not outside:
                return mask
            gens.append(outside[0])
            mask = self.closure_mask(gens, start)

    def check_limit(self, limit):
        if len(self) > limit:
            raise TooLarge(f"group has {len(self)} elements (limit {limit})")


def symmetric_group(k: int) -> FiniteGroupTable:
    from ..perm import all_permutations
    return FiniteGroupTable(np.array(all_permutations(k)))


def alternating_group(k: int) -> FiniteGroupTable:
    from ..perm import all_permutations, parity
    return FiniteGroupTable(np.array([p for p in all_permutations(k) if parity(p) == 1]))


def direct_product(*tables) -> FiniteGroupTable:
    """Product acting on the disjoint union of the factors' point sets."""
    from itertools import product
    rows = []
    for combo in product(*[range(len(t)) for t in tables]):
        row, shift = [], 0
        for t, i in zip(tables, combo):
            row.extend(int(x) + shift for x in t.elements[i])
            shift += t.degree
        rows.append(row)
    return FiniteGroupTable(np.array(rows))
