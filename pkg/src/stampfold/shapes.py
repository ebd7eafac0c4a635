"""Folding shapes and meanders: classes under G = {1, r, c, rc}."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .enumeration import (
    all_folding_listings,
    count_semi_meanders,
    enumerate_symmetric_odd_shapes,
    semi_meander_listings,
)
from .folding import Folding, leaf_is_out
from .perm import Permutation, complement, group_images, is_symmetric, reverse, reverse_complement

CENSUS_MAX_N = 14


class InconsistencyError(RuntimeError):
    """Two independent routes to the same count disagree."""


def canonical_under_G(f: Folding | Permutation) -> Permutation:
    p = f.listing if isinstance(f, Folding) else Permutation(f)
    return min(group_images(p))


def is_meander(f: Folding | Permutation) -> bool:
    """Both ends out; for even n also the {1, r} representative."""
    p = f.listing if isinstance(f, Folding) else Permutation(f)
    n = len(p)
    pos = _positions(p)
    if not (leaf_is_out(p, 1, pos) and leaf_is_out(p, n, pos)):
        return False
    return n % 2 == 1 or p <= reverse(p)


def _positions(listing):
    pos = [0] * (len(listing) + 1)
    for i, label in enumerate(listing, 1):
        pos[label] = i
    return pos


def _meander_rep(p: tuple) -> tuple:
    return p if len(p) % 2 else min(p, p[::-1])


@dataclass(frozen=True)
class Census:
    """Aggregate counts from one pass over every folding of n stamps."""

    n: int
    t: int
    t_oo: int
    t_io: int  # leaf 1 in, leaf n out
    t_oi: int  # leaf 1 out, leaf n in
    t_ii: int
    z: int
    b: int
    b_oo: int
    m: int
    q: int
    a: int

    @property
    def t_o(self) -> int:
        return self.t_oo + self.t_io

    @property
    def t_i(self) -> int:
        return self.t_oi + self.t_ii


@lru_cache(maxsize=None)
def census(n: int, max_n: int = CENSUS_MAX_N) -> Census:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > max_n:
        raise ValueError("census limited to n <= %d (got %d)" % (max_n, n))
    t = t_oo = t_io = t_oi = t_ii = z = 0
    shapes = set()
    shapes_oo = set()
    meanders = set()
    for listing in all_folding_listings(n, None):
        t += 1
        p = Permutation(listing)
        pos = _positions(listing)
        first = leaf_is_out(listing, 1, pos)
        last = leaf_is_out(listing, n, pos)
        if is_symmetric(p):
            z += 1
        canon = min(group_images(p))
        shapes.add(canon)
        if first and last:
            t_oo += 1
            shapes_oo.add(canon)
            if n % 2 or listing <= listing[::-1]:
                meanders.add(p)
        elif last:
            t_io += 1
        elif first:
            t_oi += 1
        else:
            t_ii += 1
    q = sum(1 for g in meanders if is_symmetric(g))
    # meander shapes, acting only through maps that send meanders to meanders
    if n % 2:
        classes = {min(g, reverse(g), complement(g), reverse_complement(g)) for g in meanders}
    else:
        classes = {min(g, _meander_rep(reverse_complement(g))) for g in meanders}
    return Census(n, t, t_oo, t_io, t_oi, t_ii, z, len(shapes), len(shapes_oo),
                  len(meanders), q, len(classes))


@lru_cache(maxsize=None)
def symmetric_shapes(p: int) -> tuple[Permutation, ...]:
    return tuple(f.listing for f in enumerate_symmetric_odd_shapes(p))


def count_symmetric_shapes(p: int) -> int:
    """k(p)."""
    return len(symmetric_shapes(p))


def count_symmetric_out_shapes(p: int) -> int:
    """k^o(p): symmetric (2p+1)-folding shapes with both ends out."""
    n = 2 * p + 1
    # for a symmetric folding the two ends are exchanged by rc
    return sum(1 for f in symmetric_shapes(p) if leaf_is_out(f, 1) and leaf_is_out(f, n))


def count_symmetric_foldings(n: int) -> int:
    """z(n) from the tree counters: 2 r(p+1) for n = 2p, 2 k(p) for n = 2p+1."""
    if n == 1:
        return 1
    if n % 2 == 0:
        return 2 * count_semi_meanders(n // 2 + 1)
    return 2 * count_symmetric_shapes((n - 1) // 2)


@lru_cache(maxsize=None)
def count_semi_meanders_out(n: int) -> int:
    """r^o(n): foldings with leaf 1 on top and leaf n out."""
    total = 0
    for listing in semi_meander_listings(n, None):
        if leaf_is_out(listing, n):
            total += 1
    return total


def _agree(what: str, n: int, *values: int) -> int:
    if len(set(values)) != 1:
        raise InconsistencyError("%s(%d): routes disagree: %s" % (what, n, values))
    return values[0]


def count_blank_shapes(n: int) -> int:
    if n == 1:
        return 1
    direct = census(n).b
    t = n * count_semi_meanders(n)
    num = t + count_symmetric_foldings(n)
    if num % 4:
        raise InconsistencyError("b(%d): t + z = %d is not divisible by 4" % (n, num))
    return _agree("b", n, direct, num // 4)


def count_meanders(n: int) -> int:
    return _agree("m", n, census(n).m, count_semi_meanders_out(n + 1))


def count_closed_meanders(n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return count_meanders(2 * n - 1)


def count_symmetric_meanders(n: int) -> int:
    return census(n).q


def meander_shapes_formula(n: int) -> int:
    if n == 1:
        return 1
    if n % 2 == 0:
        num = count_meanders(n) + count_meanders(n // 2)
        den = 2
    else:
        num = count_meanders(n) + 2 * count_symmetric_out_shapes((n - 1) // 2)
        den = 4
    if num % den:
        raise InconsistencyError("a(%d): formula numerator %d not divisible by %d" % (n, num, den))
    return num // den


def count_meander_shapes(n: int) -> int:
    c = census(n)
    return _agree("a", n, c.a, meander_shapes_formula(n), c.b_oo)


def _noncrossing_matchings(points: tuple[int, ...]):
    if not points:
        yield ()
        return
    first = points[0]
    for i in range(1, len(points), 2):
        inside, outside = points[1:i], points[i + 1:]
        for a in _noncrossing_matchings(inside):
            for b in _noncrossing_matchings(outside):
                yield ((first, points[i]),) + a + b


def count_closed_meanders_direct(n: int) -> int:
    """M(n) counted from scratch: pairs (upper, lower) of non-crossing
    perfect matchings on 2n points whose union is a single loop."""
    if n < 1:
        raise ValueError("n must be >= 1")
    points = tuple(range(2 * n))
    matchings = []
    for mt in _noncrossing_matchings(points):
        mate = [0] * (2 * n)
        for a, b in mt:
            mate[a], mate[b] = b, a
        matchings.append(mate)
    total = 0
    for up in matchings:
        for down in matchings:
            x, steps = 0, 0
            while True:
                x = down[up[x]]
                steps += 1
                if x == 0:
                    break
            total += steps == n
    return total
