"""Abstract incidence structures and their exact realizations.

An :class:`IncidenceStructure` is a partial linear space: ``n`` points
labeled ``0..n-1`` and a list of maximal collinear point sets, each of size
at least 3, any two points sharing at most one set.  A :class:`Realization`
attaches exact projective coordinates to the points; it is *exact* when the
listed sets are collinear and nothing else is.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterable, Sequence

from .projective import ProjectivePoint, collinear


class StructureError(ValueError):
    """An incidence-structure invariant is violated."""


Line = tuple[int, ...]


class IncidenceStructure:
    """Partial linear space on points 0..n-1 with maximal collinear sets.

    A collinear quadruple is stored as one 4-set, never as four triples.
    Lines are kept sorted (each internally ascending, the list in lexicographic
    order), so equal structures compare and hash equal.
    """

    __slots__ = ("n", "lines")

    def __init__(self, n: int, lines: Iterable[Iterable[int]]):
        if n < 0:
            raise StructureError("point count must be nonnegative")
        norm: list[Line] = []
        for raw in lines:
            line = tuple(sorted(raw))
            if len(set(line)) != len(line):
                raise StructureError(f"line {raw} repeats a point")
            if len(line) < 3:
                raise StructureError(f"line {line} has fewer than 3 points")
            if line[0] < 0 or line[-1] >= n:
                raise StructureError(f"line {line} is out of range for n={n}")
            norm.append(line)
        norm.sort()
        seen_pairs: set[tuple[int, int]] = set()
        for line in norm:
            for pair in combinations(line, 2):
                if pair in seen_pairs:
                    raise StructureError(
                        f"points {pair[0]} and {pair[1]} lie on two listed sets"
                    )
                seen_pairs.add(pair)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "lines", tuple(norm))

    def __setattr__(self, name, value):
        raise AttributeError("IncidenceStructure is immutable")

    def degree(self, p: int) -> int:
        """Number of listed sets containing ``p`` (a 4-set counts once)."""
        if not 0 <= p < self.n:
            raise StructureError(f"point {p} out of range for n={self.n}")
        return sum(1 for line in self.lines if p in line)

    def degrees(self) -> list[int]:
        out = [0] * self.n
        for line in self.lines:
            for p in line:
                out[p] += 1
        return out

    def max_line_size(self) -> int:
        return max((len(line) for line in self.lines), default=0)

    def triple_count(self) -> int:
        return sum(1 for line in self.lines if len(line) == 3)

    def relabel(self, perm: Sequence[int]) -> "IncidenceStructure":
        """Image under the point bijection ``p -> perm[p]``."""
        if sorted(perm) != list(range(self.n)):
            raise StructureError("relabeling must be a bijection on the points")
        return IncidenceStructure(
            self.n, [tuple(perm[p] for p in line) for line in self.lines]
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, IncidenceStructure):
            return NotImplemented
        return self.n == other.n and self.lines == other.lines

    def __hash__(self):
        return hash((self.n, self.lines))

    def __repr__(self):
        return f"IncidenceStructure({self.n}, {list(self.lines)})"


def degree(s: IncidenceStructure, p: int) -> int:
    return s.degree(p)


def _point_profiles(s: IncidenceStructure, rounds: int = 2) -> list:
    """Relabeling-invariant point signatures, refined by neighborhood."""
    sizes = [sorted(len(l) for l in s.lines if p in l) for p in range(s.n)]
    prof = [(len(sizes[p]), tuple(sizes[p])) for p in range(s.n)]
    for _ in range(rounds):
        nxt = []
        for p in range(s.n):
            neigh = sorted(
                (len(l), sorted(prof[q] for q in l if q != p))
                for l in s.lines
                if p in l
            )
            nxt.append((prof[p], tuple((k, tuple(v)) for k, v in neigh)))
        ranks = {sig: i for i, sig in enumerate(sorted(set(nxt)))}
        prof = [ranks[sig] for sig in nxt]
    return prof


def _encoding(n: int, lines: Sequence[Line], perm: Sequence[int]) -> tuple[Line, ...]:
    return tuple(sorted(tuple(sorted(perm[p] for p in line)) for line in lines))


class _CanonicalSearch:
    """Best-first search for the lexicographically minimal relabeling.

    New labels are assigned in order 0, 1, ...; a branch is cut as soon as an
    optimistic completion of the partially relabeled line list already exceeds
    the best encoding found so far.
    """

    def __init__(self, s: IncidenceStructure, stop_below: tuple | None = None):
        self.s = s
        self.lines = [list(l) for l in s.lines]
        self.profiles = _point_profiles(s)
        self.best: tuple | None = stop_below
        self.best_is_input = stop_below is not None
        self.improved = False
        self.new_label = [-1] * s.n

    def _optimistic(self, depth: int) -> tuple:
        opt = []
        for line in self.lines:
            mapped = sorted(self.new_label[p] for p in line if self.new_label[p] >= 0)
            missing = len(line) - len(mapped)
            fill = range(depth, depth + missing)
            opt.append(tuple(sorted(mapped + list(fill))))
        return tuple(sorted(opt))

    def run(self) -> tuple:
        self._rec(0)
        assert self.best is not None
        return self.best

    def _rec(self, depth: int) -> None:
        s = self.s
        if self.best_is_input and self.improved:
            return
        if depth == s.n:
            enc = self._optimistic(depth)
            if self.best is None or enc < self.best:
                if self.best is not None:
                    self.improved = True
                self.best = enc
            return
        # candidate order: low invariant rank first, then points already
        # touching small new labels
        cands = [p for p in range(s.n) if self.new_label[p] == -1]
        cands.sort(key=lambda p: (self.profiles[p], p))
        for p in cands:
            self.new_label[p] = depth
            # optimistic lower bound: a strict improvement needs a strictly
            # smaller bound somewhere along its path
            if self.best is None or self._optimistic(depth + 1) < self.best:
                self._rec(depth + 1)
            self.new_label[p] = -1
            if self.best_is_input and self.improved:
                return


def canonical_form(s: IncidenceStructure) -> IncidenceStructure:
    """Canonical representative of the isomorphism class of ``s``.

    Minimizes the sorted line-tuple encoding over all relabelings; two
    structures are isomorphic iff their canonical forms are equal.  Point
    count is preserved, so degree-0 points matter.
    """
    if not s.lines:
        return IncidenceStructure(s.n, [])
    enc = _CanonicalSearch(s).run()
    return IncidenceStructure(s.n, enc)


def is_min_labeling(s: IncidenceStructure) -> bool:
    """True iff ``s`` already carries its canonical labeling."""
    if not s.lines:
        return True
    here = _encoding(s.n, s.lines, list(range(s.n)))
    search = _CanonicalSearch(s, stop_below=here)
    search.run()
    return not search.improved


def are_isomorphic(a: IncidenceStructure, b: IncidenceStructure) -> bool:
    """Backtracking isomorphism test (independent of canonical_form)."""
    if a.n != b.n or len(a.lines) != len(b.lines):
        return False
    if sorted(len(l) for l in a.lines) != sorted(len(l) for l in b.lines):
        return False
    pa, pb = _point_profiles(a), _point_profiles(b)
    if sorted(pa) != sorted(pb):
        return False
    lines_b = set(b.lines)
    pairs_b = {frozenset(p) for l in b.lines for p in combinations(l, 2)}
    mapping = [-1] * a.n
    used = [False] * b.n

    lines_a = sorted(a.lines, key=len, reverse=True)

    def place(i: int) -> bool:
        if i == a.n:
            return all(
                tuple(sorted(mapping[p] for p in line)) in lines_b for line in a.lines
            )
        p = order[i]
        for q in range(b.n):
            if used[q] or pa[p] != pb[q]:
                continue
            ok = True
            for r in range(a.n):
                if mapping[r] < 0 or r == p:
                    continue
                in_a = frozenset((p, r)) in pairs_a
                in_b = frozenset((q, mapping[r])) in pairs_b
                if in_a != in_b:
                    ok = False
                    break
            if not ok:
                continue
            mapping[p] = q
            used[q] = True
            if place(i + 1):
                return True
            mapping[p] = -1
            used[q] = False
        return False

    pairs_a = {frozenset(p) for l in a.lines for p in combinations(l, 2)}
    order = sorted(range(a.n), key=lambda p: (-len([l for l in lines_a if p in l]), p))
    return place(0)


class Realization:
    """Coordinates for the points of an incidence structure.

    Exactness (the listed sets are collinear, no unlisted triple is, and the
    points are pairwise distinct) is *not* enforced at construction; use
    :func:`verify_realization`.
    """

    __slots__ = ("structure", "coords")

    def __init__(self, structure: IncidenceStructure, coords: Sequence[ProjectivePoint]):
        coords = tuple(coords)
        if len(coords) != structure.n:
            raise StructureError(
                f"expected {structure.n} coordinates, got {len(coords)}"
            )
        object.__setattr__(self, "structure", structure)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("Realization is immutable")

    @property
    def field(self) -> int | None:
        for p in self.coords:
            if p.field is not None:
                return p.field
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Realization):
            return NotImplemented
        return self.structure == other.structure and self.coords == other.coords

    def __repr__(self):
        return f"Realization({self.structure!r}, {list(self.coords)!r})"


def verify_realization(r: Realization) -> bool:
    """Exactness check by exhaustive triple scan with exact determinants."""
    pts = r.coords
    n = len(pts)
    if len(set(pts)) != n:
        return False
    listed_triples = set()
    for line in r.structure.lines:
        for t in combinations(line, 3):
            listed_triples.add(t)
    for t in combinations(range(n), 3):
        if collinear(pts[t[0]], pts[t[1]], pts[t[2]]) != (t in listed_triples):
            return False
    return True


def maximal_collinear_sets(points: Sequence[ProjectivePoint]) -> list[Line]:
    """Maximal >=3-point collinear subsets of a list of distinct points."""
    n = len(points)
    best: dict[frozenset[int], None] = {}
    seen_pairs: set[frozenset[int]] = set()
    for i, j in combinations(range(n), 2):
        if frozenset((i, j)) in seen_pairs:
            continue
        members = [i, j]
        for k in range(n):
            if k != i and k != j and collinear(points[i], points[j], points[k]):
                members.append(k)
        for a, b in combinations(members, 2):
            seen_pairs.add(frozenset((a, b)))
        if len(members) >= 3:
            best[frozenset(members)] = None
    return sorted(tuple(sorted(m)) for m in best)


def spanned_structure(points: Sequence[ProjectivePoint]) -> IncidenceStructure:
    """Incidence structure whose lines are the spanned collinear sets."""
    if len(set(points)) != len(points):
        raise StructureError("points must be pairwise distinct")
    return IncidenceStructure(len(points), maximal_collinear_sets(points))
