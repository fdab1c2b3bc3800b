"""Deterministic height-ordered enumeration of rationals.

The height of ``p/q`` in lowest terms (q > 0) is ``max(|p|, q)``.  All search
loops in the package walk candidates in increasing height, positive before
negative within each step, so every run of every search is reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterator


def height(q: Fraction | int) -> int:
    q = Fraction(q)
    return max(abs(q.numerator), q.denominator)


def rationals_of_height(h: int) -> Iterator[Fraction]:
    """All rationals with height exactly ``h``, positives before negatives."""
    if h < 1:
        return
    if h == 1:
        yield Fraction(0)
        yield Fraction(1)
        yield Fraction(-1)
        return
    for num in range(1, h + 1):
        for den in range(1, h + 1):
            if max(num, den) != h or gcd(num, den) != 1:
                continue
            yield Fraction(num, den)
            yield Fraction(-num, den)


def rationals(max_height: int | None = None) -> Iterator[Fraction]:
    """All rationals in height order; infinite when no bound is given."""
    h = 1
    while max_height is None or h <= max_height:
        yield from rationals_of_height(h)
        h += 1


def rational_pairs(max_height: int | None = None) -> Iterator[tuple[Fraction, Fraction]]:
    """Pairs of rationals graded by the larger height of the two."""
    h = 1
    while max_height is None or h <= max_height:
        new = list(rationals_of_height(h))
        old = [q for g in range(1, h) for q in rationals_of_height(g)]
        for u in new:
            for v in new:
                yield u, v
        for u in new:
            for v in old:
                yield u, v
        for u in old:
            for v in new:
                yield u, v
        h += 1
