"""Folding validity, arcs, end classification and the brute-force oracle.

Arc ``j`` joins labels ``j`` and ``j+1``.  It sits on the right side of
the stack when ``j`` is odd and on the left when ``j`` is even.  All the
geometry is expressed through stack positions, i.e. through the inverse
of the top-to-bottom listing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Literal, Sequence

from .perm import Permutation, PermutationError, inverse, make_permutation

RIGHT = "right"
LEFT = "left"

BRUTE_FORCE_MAX_N = 9


class NotAFoldingError(PermutationError):
    pass


def arc_side(j: int) -> str:
    return RIGHT if j % 2 else LEFT


@dataclass(frozen=True)
class Arc:
    label_pair: tuple[int, int]
    lo: int
    hi: int
    side: str

    def encloses(self, position: float) -> bool:
        return self.lo < position < self.hi

    def crosses(self, other: "Arc") -> bool:
        if self.side != other.side:
            return False
        return (self.lo < other.lo < self.hi < other.hi
                or other.lo < self.lo < other.hi < self.hi)


@dataclass(frozen=True)
class EndFlags:
    leaf1_out: bool
    leafn_out: bool


def _positions(listing: Sequence[int]) -> list[int]:
    """0-padded label -> position table (index 0 unused)."""
    pos = [0] * (len(listing) + 1)
    for i, label in enumerate(listing, 1):
        pos[label] = i
    return pos


def arcs_of(f: Sequence[int]) -> list[Arc]:
    listing = f.listing if isinstance(f, Folding) else f
    pos = _positions(listing)
    arcs = []
    for j in range(1, len(listing)):
        a, b = pos[j], pos[j + 1]
        arcs.append(Arc((j, j + 1), min(a, b), max(a, b), arc_side(j)))
    return arcs


def _cyclically_increasing(a: int, b: int, c: int, d: int) -> bool:
    # exactly one descent around the cycle a->b->c->d->a
    return (a > b) + (b > c) + (c > d) + (d > a) == 1


def satisfies_lemma(p: Sequence[int]) -> bool:
    """Koehler's criterion on the label -> position map ``q``.

    Fails iff q(i), q(j), q(i+1), q(j+1) occur in circular order for some
    pair i != j of equal parity.
    """
    q = _positions(p)
    n = len(p)
    for i in range(1, n):
        for j in range(i + 2, n, 2):
            a, b, c, d = q[i], q[j], q[i + 1], q[j + 1]
            if _cyclically_increasing(a, b, c, d) or _cyclically_increasing(b, a, d, c):
                return False
    return True


def has_no_same_side_crossing(p: Sequence[int]) -> bool:
    """Geometric form of the criterion, one stack pass per side."""
    pos = _positions(p)
    n = len(p)
    for parity in (0, 1):
        # mate[x] = other endpoint of the arc on this side touching x
        mate = [0] * (n + 1)
        for j in range(2 - parity, n, 2):
            a, b = pos[j], pos[j + 1]
            mate[a], mate[b] = b, a
        stack = []
        for x in range(1, n + 1):
            y = mate[x]
            if not y:
                continue
            if y > x:
                stack.append(x)
            elif not stack or stack.pop() != y:
                return False
    return True


def is_folding(p: Sequence[int]) -> bool:
    return satisfies_lemma(p)


class Folding:
    """A permutation that passes the folding criterion.

    ``listing`` is the top-to-bottom label sequence, ``positions`` its
    inverse.  Arcs are derived lazily.
    """

    __slots__ = ("listing", "_positions", "_arcs")

    def __init__(self, listing: Sequence[int], check: bool = True):
        if not isinstance(listing, Permutation):
            listing = make_permutation(listing) if check else Permutation(listing)
        if check and not is_folding(listing):
            raise NotAFoldingError("%s is not a folding" % (listing,))
        self.listing = listing
        self._positions = None
        self._arcs = None

    @property
    def n(self) -> int:
        return len(self.listing)

    @property
    def positions(self) -> Permutation:
        if self._positions is None:
            self._positions = inverse(self.listing)
        return self._positions

    @property
    def arcs(self) -> list[Arc]:
        if self._arcs is None:
            self._arcs = arcs_of(self.listing)
        return self._arcs

    def __eq__(self, other):
        if isinstance(other, Folding):
            return self.listing == other.listing
        return NotImplemented

    def __lt__(self, other):
        return self.listing < other.listing

    def __hash__(self):
        return hash(self.listing)

    def __repr__(self):
        return "Folding(%s)" % ",".join(map(str, self.listing))

    def __str__(self):
        return str(self.listing)


def _free_side_parity(leaf: int, n: int) -> int:
    """Parity of the (virtual) arc on the free side of an end leaf."""
    if leaf == 1:
        return 0  # arc (1,2) is on the right, so the free side is the left
    return n % 2


def leaf_is_out(listing: Sequence[int], leaf: int, pos: Sequence[int] | None = None) -> bool:
    n = len(listing)
    if n == 1:
        return True
    if pos is None:
        pos = _positions(listing)
    x = pos[leaf]
    parity = _free_side_parity(leaf, n)
    start = 2 if parity == 0 else 1
    for j in range(start, n, 2):
        a, b = pos[j], pos[j + 1]
        if a < x < b or b < x < a:
            return False
    return True


def leaf_out(f: Folding, end: Literal["first", "last"]) -> bool:
    if end not in ("first", "last"):
        raise ValueError("end must be 'first' or 'last', got %r" % (end,))
    listing = f.listing if isinstance(f, Folding) else f
    leaf = 1 if end == "first" else len(listing)
    return leaf_is_out(listing, leaf)


def classify_ends(f: Folding) -> EndFlags:
    listing = f.listing if isinstance(f, Folding) else f
    pos = _positions(listing)
    return EndFlags(leaf_is_out(listing, 1, pos), leaf_is_out(listing, len(listing), pos))


def brute_force_foldings(n: int, max_n: int = BRUTE_FORCE_MAX_N) -> Iterator[Folding]:
    """Every folding of n stamps, by filtering all n! permutations."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > max_n:
        raise ValueError("brute force limited to n <= %d (got %d)" % (max_n, n))
    for p in itertools.permutations(range(1, n + 1)):
        if satisfies_lemma(p):
            yield Folding(Permutation(p), check=False)
