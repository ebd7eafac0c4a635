"""Insertion-tree enumeration of foldings.

The semi-meander tree grows a folding of k stamps into foldings of k+1
stamps by hanging leaf k+1 off leaf k and sliding it into every gap of
the stack its new arc can reach without crossing an arc on the same
side.  Gaps are indexed 0..k, gap g lying between positions g and g+1
(the half-integer position g + 0.5).
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator, Sequence

from .folding import Folding, arc_side, is_folding
from .perm import Permutation, is_symmetric, reverse, roll

log = logging.getLogger(__name__)

MAX_ENUMERATION_N = 20

# rejected candidates seen by the symmetric tree, keyed by level p
symmetric_rejections: dict[int, int] = {}


def _mates(listing: Sequence[int], pos: Sequence[int], parity: int) -> list[int]:
    """Position-indexed partner table for the arcs ``(j, j+1)`` with j of ``parity``."""
    n = len(listing)
    mate = [0] * (n + 2)
    for j in range(2 - parity, n, 2):
        a, b = pos[j], pos[j + 1]
        mate[a] = b
        mate[b] = a
    return mate


def _reachable_gaps(anchor: int, mate: Sequence[int], k: int) -> list[int]:
    """Gaps reachable from position ``anchor`` without crossing a mated arc.

    Walks outward in both directions, hopping over arcs that lie wholly
    on one side of the anchor and stopping at the first arc enclosing it.
    Returned in increasing order.
    """
    up = [anchor - 1]
    x = anchor - 1
    while x >= 1:
        y = mate[x]
        if y > x:
            break
        if y:
            x = y
        up.append(x - 1)
        x -= 1
    down = [anchor]
    x = anchor + 1
    while x <= k:
        y = mate[x]
        if y and y < x:
            break
        if y:
            x = y
        down.append(x)
        x += 1
    up.reverse()
    return up + down


def _positions(listing: Sequence[int]) -> list[int]:
    pos = [0] * (len(listing) + 1)
    for i, label in enumerate(listing, 1):
        pos[label] = i
    return pos


def _gaps(listing: Sequence[int], pos: Sequence[int], keep_leaf1_on_top: bool) -> list[int]:
    k = len(listing)
    mate = _mates(listing, pos, k % 2)
    gaps = _reachable_gaps(pos[k], mate, k)
    if keep_leaf1_on_top and gaps and gaps[0] == 0 and pos[1] == 1:
        gaps = gaps[1:]
    return gaps


def valid_gaps(f: Folding | Sequence[int], keep_leaf1_on_top: bool = True) -> list[int]:
    """Gaps where leaf k+1 may be inserted below/above the stack of ``f``.

    Gap g means the new leaf lands at position g+1.  The new arc
    ``(k, k+1)`` is on the right iff k is odd.
    """
    listing = f.listing if isinstance(f, Folding) else tuple(f)
    return _gaps(listing, _positions(listing), keep_leaf1_on_top)


def insert_leaf(listing: Sequence[int], gap: int) -> Permutation:
    lst = list(listing)
    lst.insert(gap, len(lst) + 1)
    return Permutation(lst)


def _walk(listing: list[int], pos: list[int], n: int) -> Iterator[tuple[int, ...]]:
    k = len(listing)
    if k == n:
        yield tuple(listing)
        return
    for g in _gaps(listing, pos, True):
        child = listing[:g] + [k + 1] + listing[g:]
        cpos = [p + 1 if p > g else p for p in pos]
        cpos.append(g + 1)
        yield from _walk(child, cpos, n)


def _count(listing: list[int], pos: list[int], n: int) -> int:
    k = len(listing)
    gaps = _gaps(listing, pos, True)
    if k + 1 == n:
        return len(gaps)
    total = 0
    for g in gaps:
        child = listing[:g] + [k + 1] + listing[g:]
        cpos = [p + 1 if p > g else p for p in pos]
        cpos.append(g + 1)
        total += _count(child, cpos, n)
    return total


def _check_n(n: int, limit: int | None) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")
    if limit is not None and n > limit:
        raise ValueError("enumeration limited to n <= %d (got %d)" % (limit, n))


def semi_meander_listings(n: int, max_n: int | None = MAX_ENUMERATION_N) -> Iterator[tuple[int, ...]]:
    """Raw listings of R_n (leaf 1 on top) in depth-first order."""
    _check_n(n, max_n)
    yield from _walk([1], [0, 1], n)


def enumerate_semi_meanders(n: int, max_n: int | None = MAX_ENUMERATION_N) -> Iterator[Folding]:
    for listing in semi_meander_listings(n, max_n):
        yield Folding(Permutation(listing), check=False)


def all_folding_listings(n: int, max_n: int | None = MAX_ENUMERATION_N) -> Iterator[tuple[int, ...]]:
    for listing in semi_meander_listings(n, max_n):
        for s in range(n):
            yield listing[s:] + listing[:s]


def enumerate_all_foldings(n: int, max_n: int | None = MAX_ENUMERATION_N) -> Iterator[Folding]:
    """Every folding of n stamps: the n roll images of each semi-meander."""
    for f in enumerate_semi_meanders(n, max_n):
        p = f.listing
        for _ in range(n):
            yield Folding(p, check=False)
            p = roll(p)


def _frontier(n: int, depth: int) -> list[tuple[list[int], list[int]]]:
    level = [([1], [0, 1])]
    for _ in range(depth):
        nxt = []
        for listing, pos in level:
            k = len(listing)
            if k >= n:
                return level
            for g in _gaps(listing, pos, True):
                child = listing[:g] + [k + 1] + listing[g:]
                cpos = [p + 1 if p > g else p for p in pos]
                cpos.append(g + 1)
                nxt.append((child, cpos))
        level = nxt
    return level


def _count_task(args):
    listing, pos, n = args
    if len(listing) == n:
        return 1
    return _count(listing, pos, n)


def count_semi_meanders(n: int) -> int:
    """r(n) by a sequential depth-first count (no folding objects built)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return 1
    return _count([1], [0, 1], n)


def count_foldings_parallel(n: int, workers: int = 1, split_depth: int | None = None) -> int:
    """r(n), with disjoint subtrees at a fixed depth counted by worker processes.

    The split depth defaults to the shallowest level holding at least
    four subtrees per worker.  t(n) is ``n * count_foldings_parallel(n)``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if workers == 1 or n < 6:
        return count_semi_meanders(n)
    if split_depth is None:
        split_depth = 1
        while split_depth < n - 2 and len(_frontier(n, split_depth)) < 4 * workers:
            split_depth += 1
    tasks = [(listing, pos, n) for listing, pos in _frontier(n, split_depth)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        counts = list(pool.map(_count_task, tasks, chunksize=1))
    return sum(counts)


def canonical_under_reverse(p: Permutation) -> Permutation:
    return min(p, reverse(p))


def _symmetric_children(f: Sequence[int]) -> tuple[list[Permutation], int]:
    """Grow a symmetric (2p+1)-folding by one stamp at each end."""
    m = len(f)
    shifted = [label + 1 for label in f]
    # leaf 1 hangs off leaf 2 on the right side: reuse the gap walk
    pos = _positions([0] + shifted)  # pos[label] is 1 + position in shifted
    anchor = pos[2] - 1
    mate = [0] * (m + 2)
    for j in range(3, m + 1, 2):
        a, b = pos[j] - 1, pos[j + 1] - 1
        mate[a], mate[b] = b, a
    children, rejected = [], 0
    for g in _reachable_gaps(anchor, mate, m):
        h = m - g
        lst = list(shifted)
        if g < h:
            lst.insert(h, m + 2)
            lst.insert(g, 1)
        else:
            lst.insert(g, 1)
            lst.insert(h, m + 2)
        child = Permutation(lst)
        if is_folding(child) and is_symmetric(child):
            children.append(child)
        else:
            rejected += 1
    return children, rejected


def enumerate_symmetric_odd_shapes(p: int) -> Iterator[Folding]:
    """One representative (min of f, f^r) per symmetric (2p+1)-folding shape."""
    if p < 0:
        raise ValueError("p must be >= 0")
    level = [Permutation((1,))]
    for step in range(1, p + 1):
        seen = set()
        nxt = []
        rejected = 0
        for f in level:
            children, rej = _symmetric_children(f)
            rejected += rej
            for child in children:
                c = canonical_under_reverse(child)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        symmetric_rejections[step] = rejected
        if rejected:
            log.debug("symmetric tree level %d: %d candidates rejected", step, rejected)
        level = sorted(nxt)
    for f in level:
        yield Folding(f, check=False)
