"""Permutations of 1..n and the symmetry maps acting on them.

A permutation is stored as the tuple of its entries, read as a stack
listing from top to bottom.  Labels and positions are both 1-based.
"""

from __future__ import annotations

from typing import Iterable


class PermutationError(ValueError):
    pass


class Permutation(tuple):
    """Immutable bijection of {1, .., n}.

    Subclasses ``tuple`` so that permutations hash, compare
    lexicographically and unpack like plain tuples.  Construct through
    :func:`make_permutation` to get validation.
    """

    __slots__ = ()

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        # 1-based evaluation, p(i)
        return self[i - 1]

    def __repr__(self) -> str:
        return "Permutation(%s)" % ",".join(map(str, self))

    def __str__(self) -> str:
        return format_permutation(self)


def make_permutation(labels: Iterable[int]) -> Permutation:
    entries = tuple(labels)
    n = len(entries)
    if n == 0:
        raise PermutationError("empty permutation (n starts at 1)")
    seen = set()
    for e in entries:
        if not isinstance(e, int) or isinstance(e, bool):
            raise PermutationError("label %r is not an integer" % (e,))
        if e < 1 or e > n:
            raise PermutationError("label %d out of range 1..%d" % (e, n))
        if e in seen:
            raise PermutationError("duplicate label %d" % e)
        seen.add(e)
    return Permutation(entries)


def parse_permutation(text: str) -> Permutation:
    """Parse the space-separated text form, e.g. ``"1 4 3 2"``."""
    try:
        labels = [int(tok) for tok in text.split()]
    except ValueError as exc:
        raise PermutationError("cannot parse permutation %r" % text) from exc
    return make_permutation(labels)


def format_permutation(p: Iterable[int]) -> str:
    return " ".join(map(str, p))


def inverse(p: Permutation) -> Permutation:
    q = [0] * len(p)
    for i, e in enumerate(p, 1):
        q[e - 1] = i
    return Permutation(q)


def reverse(p: Permutation) -> Permutation:
    """Top-bottom flip: p^r(i) = p(n+1-i)."""
    return Permutation(p[::-1])


def complement(p: Permutation) -> Permutation:
    """Label reversal: p^c(i) = n+1-p(i)."""
    m = len(p) + 1
    return Permutation(m - e for e in p)


def reverse_complement(p: Permutation) -> Permutation:
    m = len(p) + 1
    return Permutation(m - e for e in reversed(p))


def is_symmetric(p: Permutation) -> bool:
    m = len(p) + 1
    n = len(p)
    return all(p[i] + p[n - 1 - i] == m for i in range(n // 2 + 1))


def roll(p: Permutation) -> Permutation:
    """Move the top leaf of the stack to the bottom."""
    return Permutation(p[1:] + p[:1])


def group_images(p: Permutation) -> tuple[Permutation, Permutation, Permutation, Permutation]:
    """Images of ``p`` under G = {1, r, c, rc}, in that order."""
    return p, reverse(p), complement(p), reverse_complement(p)
