"""Exact projective plane: points, maps, collinearity, frame normalization.

Points are homogeneous triples over Q or over one quadratic extension
Q(sqrt(d)); they are canonicalized eagerly (last nonzero coordinate scaled
to 1) so equality and hashing are cheap.  Maps are invertible 3x3 rational
matrices.  All values are immutable and all operations are pure.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .fields import (
    MixedFieldError,
    QuadraticNumber,
    Scalar,
    field_of,
    join_fields,
    promote,
)
from .heights import rationals


class DegenerateFrame(ValueError):
    """The four frame points do not admit the requested normalization."""


class ProjectivePoint:
    """Point of the projective plane with exact homogeneous coordinates.

    Coordinates are stored canonicalized: the last nonzero one equals 1.
    Two points are equal iff their canonical coordinates agree, i.e. iff the
    raw triples differ by a nonzero scalar.
    """

    __slots__ = ("x", "y", "w", "field")

    def __init__(self, x: Scalar, y: Scalar, w: Scalar):
        d = join_fields(field_of(x), field_of(y), field_of(z := w))
        coords = [promote(x, d), promote(y, d), promote(z, d)]
        last = next((i for i in (2, 1, 0) if coords[i] != 0), None)
        if last is None:
            raise ValueError("(0, 0, 0) is not a projective point")
        pivot = coords[last]
        coords = [c / pivot for c in coords]
        object.__setattr__(self, "x", coords[0])
        object.__setattr__(self, "y", coords[1])
        object.__setattr__(self, "w", coords[2])
        object.__setattr__(self, "field", d)

    def __setattr__(self, name, value):
        raise AttributeError("ProjectivePoint is immutable")

    @property
    def coords(self) -> tuple[Scalar, Scalar, Scalar]:
        return (self.x, self.y, self.w)

    def is_ideal(self) -> bool:
        """True when the point lies on the line w = 0."""
        return self.w == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.x == other.x and self.y == other.y and self.w == other.w

    def __hash__(self):
        return hash((self.x, self.y, self.w))

    def __repr__(self):
        return f"ProjectivePoint({self.x}, {self.y}, {self.w})"


def _det3(rows: Sequence[Sequence[Scalar]]) -> Scalar:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def cross(u: Sequence[Scalar], v: Sequence[Scalar]) -> tuple[Scalar, Scalar, Scalar]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def collinear(p: ProjectivePoint, q: ProjectivePoint, r: ProjectivePoint) -> bool:
    """Exact collinearity: det of the coordinate matrix vanishes.

    The three points must live over a common field; two distinct quadratic
    extensions raise :class:`MixedFieldError`.
    """
    d = join_fields(p.field, q.field, r.field)
    rows = [
        [promote(c, d) for c in p.coords],
        [promote(c, d) for c in q.coords],
        [promote(c, d) for c in r.coords],
    ]
    return _det3(rows) == 0


def join(p: ProjectivePoint, q: ProjectivePoint) -> tuple[Scalar, Scalar, Scalar]:
    """Homogeneous coefficients of the line through two distinct points."""
    if p == q:
        raise ValueError("join of equal points is undefined")
    d = join_fields(p.field, q.field)
    return cross([promote(c, d) for c in p.coords], [promote(c, d) for c in q.coords])


def meet(l1: Sequence[Scalar], l2: Sequence[Scalar]) -> ProjectivePoint | None:
    """Intersection point of two lines, or None when they coincide."""
    v = cross(l1, l2)
    if all(c == 0 for c in v):
        return None
    return ProjectivePoint(*v)


class ProjectiveMap:
    """Invertible 3x3 rational matrix acting on projective points."""

    __slots__ = ("rows", "_det")

    def __init__(self, rows: Iterable[Iterable[Fraction | int]]):
        m = tuple(tuple(Fraction(c) for c in row) for row in rows)
        if len(m) != 3 or any(len(r) != 3 for r in m):
            raise ValueError("a 3x3 matrix is required")
        det = _det3(m)
        if det == 0:
            raise ValueError("projective map must be invertible")
        object.__setattr__(self, "rows", m)
        object.__setattr__(self, "_det", det)

    def __setattr__(self, name, value):
        raise AttributeError("ProjectiveMap is immutable")

    @classmethod
    def identity(cls) -> "ProjectiveMap":
        return cls([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    @property
    def det(self) -> Fraction:
        return self._det

    def __call__(self, p: ProjectivePoint) -> ProjectivePoint:
        return apply_map(self, p)

    def __matmul__(self, other: "ProjectiveMap") -> "ProjectiveMap":
        a, b = self.rows, other.rows
        return ProjectiveMap(
            [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
        )

    def inverse(self) -> "ProjectiveMap":
        m, det = self.rows, self._det
        cof = [
            [
                (m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3]
                 - m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3])
                for i in range(3)
            ]
            for j in range(3)
        ]
        return ProjectiveMap([[c / det for c in row] for row in cof])

    def __eq__(self, other) -> bool:
        # equality as a projective transformation: rows proportional
        if not isinstance(other, ProjectiveMap):
            return NotImplemented
        flat_a = [c for row in self.rows for c in row]
        flat_b = [c for row in other.rows for c in row]
        k = next(i for i, c in enumerate(flat_a) if c != 0)
        if flat_b[k] == 0:
            return False
        scale = flat_a[k] / flat_b[k]
        return all(a == scale * b for a, b in zip(flat_a, flat_b))

    def __hash__(self):
        flat = [c for row in self.rows for c in row]
        pivot = next(c for c in flat if c != 0)
        return hash(tuple(c / pivot for c in flat))

    def __repr__(self):
        return f"ProjectiveMap({[list(map(str, r)) for r in self.rows]})"


def apply_map(m: ProjectiveMap, p: ProjectivePoint) -> ProjectivePoint:
    """Image of ``p`` under ``m``, canonicalized."""
    x, y, w = p.coords
    img = [row[0] * x + row[1] * y + row[2] * w for row in m.rows]
    return ProjectivePoint(*img)


def frame_map(
    p1: ProjectivePoint,
    p2: ProjectivePoint,
    p3: ProjectivePoint,
    p4: ProjectivePoint,
) -> ProjectiveMap:
    """Map sending p1, p2, p4 to (1,0,0), (0,1,0), (0,0,1) and pinning p3.

    Writing ``p3 = alpha*p1 + beta*p2 + gamma*p4`` (p1, p2, p4 must span the
    plane and alpha, beta must be nonzero), the inverse map has columns
    ``alpha*p1``, ``beta*p2``, ``gamma*p4``.  When p3 lies on the line p1p2
    (gamma = 0) the third column falls back to ``p4`` itself and the image of
    p3 is (1,1,0); otherwise the image of p3 is (1,1,1).

    Raises :class:`DegenerateFrame` when p1, p2, p4 are collinear or when p3
    lies on the line p2p4 or p1p4.
    """
    d = join_fields(p1.field, p2.field, p3.field, p4.field)
    cols = [[promote(c, d) for c in p.coords] for p in (p1, p2, p4)]
    rhs = [promote(c, d) for c in p3.coords]
    # solve [p1 p2 p4] * (alpha, beta, gamma)^T = p3 by Cramer's rule
    mat = [[cols[j][i] for j in range(3)] for i in range(3)]
    det = _det3(mat)
    if det == 0:
        raise DegenerateFrame("p1, p2, p4 do not span the plane")
    sols = []
    for j in range(3):
        m = [list(row) for row in mat]
        for i in range(3):
            m[i][j] = rhs[i]
        sols.append(_det3(m) / det)
    alpha, beta, gamma = sols
    if alpha == 0:
        raise DegenerateFrame("p3 lies on the line p2p4")
    if beta == 0:
        raise DegenerateFrame("p3 lies on the line p1p4")
    if gamma == 0:
        gamma = promote(1, d)
    inv_cols = [
        [alpha * c for c in cols[0]],
        [beta * c for c in cols[1]],
        [gamma * c for c in cols[2]],
    ]
    inv_rows = [[inv_cols[j][i] for j in range(3)] for i in range(3)]
    return ProjectiveMap(inv_rows).inverse()


def frame_targets(
    p1: ProjectivePoint,
    p2: ProjectivePoint,
    p3: ProjectivePoint,
    p4: ProjectivePoint,
) -> tuple[ProjectivePoint, ...]:
    """Expected images of the four frame points under :func:`frame_map`."""
    mid = (1, 1, 0) if collinear(p1, p2, p3) else (1, 1, 1)
    return (
        ProjectivePoint(1, 0, 0),
        ProjectivePoint(0, 1, 0),
        ProjectivePoint(*mid),
        ProjectivePoint(0, 0, 1),
    )


def euclidean_relocation(points: Iterable[ProjectivePoint]) -> ProjectiveMap:
    """Rational map T = [[1,0,0],[0,1,0],[a,b,c]] pushing all points off w=0.

    The row (a, b, c) is the lowest integer triple, in height order with the
    value sequence 0, 1, -1, 2, -2, ..., such that c != 0 (T invertible) and
    a*x + b*y + c*w != 0 for every input point.  A finite point set always
    leaves such a line, so the search terminates.
    """
    pts = list(points)

    def values(h: int) -> list[int]:
        out = [0]
        for v in range(1, h + 1):
            out += [v, -v]
        return out

    h = 1
    while True:
        vals = values(h)
        for a in vals:
            for b in vals:
                for c in vals:
                    if max(abs(a), abs(b), abs(c)) != h or c == 0:
                        continue
                    if all(a * p.x + b * p.y + c * p.w != 0 for p in pts):
                        return ProjectiveMap([[1, 0, 0], [0, 1, 0], [a, b, c]])
        h += 1


def parabola_points(n: int) -> list[ProjectivePoint]:
    """n rational points with no three collinear: t -> (t, t^2, 1)."""
    out = []
    for t, _ in zip(rationals(), range(n)):
        out.append(ProjectivePoint(t, t * t, 1))
    return out
