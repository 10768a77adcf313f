"""Normalizing sign tuples in C_2^d (d odd) to ``(-1, -1, +1, ..., +1)``.

Two kinds of move are used.  A *rotation* conjugates the tuple by a 3-cycle
on three consecutive positions, which is an even permutation of positions.
A *shift-multiply* multiplies the tuple by its cyclic shift
``(a_d, a_1, ..., a_(d-1))``, i.e. by its conjugate under ``(1 2 ... d)``.

Each round first sorts all ``-1`` entries to the front with rotations;
a sorted tuple with more than two ``-1`` entries is then shift-multiplied,
leaving exactly two, and a second round finishes.
"""

from ..errors import AllPositive, OddParity, OutOfRange


def _target(d):
    return (-1, -1) + (1,) * (d - 2)


def _check(t):
    t = tuple(int(x) for x in t)
    if any(x not in (1, -1) for x in t):
        raise ValueError("entries must be +1 or -1")
    d = len(t)
    if d < 3 or d % 2 == 0:
        raise OutOfRange(f"tuple length must be odd and at least 3, got {d}")
    if t.count(-1) % 2:
        raise OddParity("product of entries is -1")
    if -1 not in t:
        raise AllPositive("tuple is all +1")
    return t


def _rotate(a, i, direction):
    a = list(a)
    if direction == "left":
        a[i], a[i + 1], a[i + 2] = a[i + 1], a[i + 2], a[i]
    else:
        a[i], a[i + 1], a[i + 2] = a[i + 2], a[i], a[i + 1]
    return tuple(a)


def _shift_multiply(a):
    shifted = (a[-1],) + a[:-1]
    return tuple(x * y for x, y in zip(a, shifted))


def apply_move(a, move):
    if move["op"] == "rotate":
        return _rotate(tuple(a), move["start"], move["direction"])
    if move["op"] == "shift-multiply":
        return _shift_multiply(tuple(a))
    raise ValueError(f"unknown move {move!r}")


def replay(t, moves):
    a = tuple(t)
    for mv in moves:
        a = apply_move(a, mv)
    return a


def _sort_round(a, moves):
    d = len(a)
    sorted_form = (-1,) * a.count(-1) + (1,) * a.count(1)
    while a != sorted_form:
        i = next(j for j in range(d - 1) if a[j] == 1 and a[j + 1] == -1)
        if i + 2 < d:
            mv = {"op": "rotate", "start": i, "direction": "left"}
        else:
            # the window would run off the end: rotate the one ending at i+1
            mv = {"op": "rotate", "start": i - 1, "direction": "right"}
        moves.append(mv)
        a = apply_move(a, mv)
    return a


def normalize_tuple(t):
    """Return ``(result, moves)``; ``replay(t, moves) == result``."""
    a = _check(t)
    target = _target(len(a))
    moves = []
    while True:
        a = _sort_round(a, moves)
        if a == target:
            return a, moves
        mv = {"op": "shift-multiply"}
        moves.append(mv)
        a = apply_move(a, mv)


def conjugator_of(move, d):
    """The position permutation (as a cycle, 0-based) a rotation conjugates by."""
    if move["op"] != "rotate":
        return tuple(range(d))
    i = move["start"]
    return (i, i + 1, i + 2) if move["direction"] == "left" else (i, i + 2, i + 1)
