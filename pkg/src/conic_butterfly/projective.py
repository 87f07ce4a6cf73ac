"""Incidence geometry of the projective plane over an exact scalar field.

Points and lines are homogeneous coordinate triples identified up to a
nonzero scalar factor.  Equality, incidence, join and meet are exact: two
objects coincide precisely when the cross product of their triples
vanishes.  Cross-ratio values live on the projective line over the scalar
field, so infinity is an ordinary value (1 : 0) and the harmonic position
is (-1 : 1).

The cross-ratio convention is pinned once for the whole package.  Writing
(alpha_i : beta_i) for the chart coordinates of p_i on the common line and
[ij] = alpha_i*beta_j - alpha_j*beta_i,

    cr(p1, p2, p3, p4) = ([12]*[34] : [14]*[32])

which equals -1 exactly when {p1, p3} and {p2, p4} are harmonic pairs.
"""

from __future__ import annotations

from itertools import combinations
from random import Random
from typing import Sequence, Tuple

from ._linalg import (
    adjugate,
    cross,
    det3,
    det_mat3,
    dot,
    matmul,
    matvec,
    scale_vec,
    transpose,
)
from .scalars import GaussianRational, PrimeFieldElement


class ProjectiveError(ValueError):
    """Geometric precondition failure (non-incidence, bad input shape)."""


class DegenerateInputError(ProjectiveError):
    """Inputs that collapse the construction (coincident points, singular maps)."""


def _infer_field(values):
    for v in values:
        if isinstance(v, PrimeFieldElement):
            return PrimeFieldElement
        if isinstance(v, GaussianRational):
            return GaussianRational
    return GaussianRational


def _require_same_field(a, b) -> None:
    if a.field is not b.field:
        raise TypeError("cannot mix scalar backends in one construction")


class _Triple:
    """Shared plumbing of points and lines: a reduced homogeneous triple."""

    __slots__ = ("coords", "field")

    def __init__(self, coords: Sequence, field=None):
        coords = tuple(coords)
        if len(coords) != 3:
            raise ProjectiveError(f"expected 3 homogeneous coordinates, got {len(coords)}")
        if field is None:
            field = _infer_field(coords)
        vals = tuple(field.coerce(c) for c in coords)
        if all(v.is_zero() for v in vals):
            raise ProjectiveError("(0 : 0 : 0) is not a projective object")
        self.coords = field.reduce_content(vals)
        self.field = field

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return all(c.is_zero() for c in cross(self.coords, other.coords))

    def __hash__(self):
        return hash((type(self).__name__,) + self.canonical())

    def canonical(self) -> tuple:
        """Coordinates rescaled so the first nonzero entry is 1."""
        lead = next(c for c in self.coords if not c.is_zero())
        inv = lead.inv()
        return tuple(c * inv for c in self.coords)

    def conjugate(self):
        return type(self)(tuple(c.conjugate() for c in self.coords), self.field)

    def is_real(self) -> bool:
        """True when the object is fixed by coordinate-wise conjugation."""
        return self == self.conjugate()

    def __str__(self):
        x, y, z = self.canonical()
        return f"({x} : {y} : {z})"

    def __repr__(self):
        return f"{type(self).__name__}{self}"

    @classmethod
    def parse(cls, text: str, field=GaussianRational):
        t = text.strip()
        if not (t.startswith("(") and t.endswith(")")):
            raise ProjectiveError(f"expected '(x : y : z)', got {text!r}")
        parts = t[1:-1].split(":")
        if len(parts) != 3:
            raise ProjectiveError(f"expected 3 coordinates in {text!r}")
        return cls(tuple(field.parse(p) for p in parts), field)


class ProjPoint(_Triple):
    """A point of the projective plane."""

    __slots__ = ()

    @classmethod
    def affine(cls, x, y, field=GaussianRational) -> "ProjPoint":
        return cls((field.coerce(x), field.coerce(y), field.one()), field)

    def to_affine(self):
        """Chart coordinates (x/z, y/z), or None for an ideal point."""
        x, y, z = self.coords
        if z.is_zero():
            return None
        inv = z.inv()
        return (x * inv, y * inv)


class ProjLine(_Triple):
    """A line of the projective plane; incidence is the dot product vanishing."""

    __slots__ = ()


def incident(p: ProjPoint, l: ProjLine) -> bool:
    _require_same_field(p, l)
    return dot(p.coords, l.coords).is_zero()


def join(p: ProjPoint, q: ProjPoint) -> ProjLine:
    _require_same_field(p, q)
    coords = cross(p.coords, q.coords)
    if all(c.is_zero() for c in coords):
        raise DegenerateInputError("join of coincident points is undefined")
    return ProjLine(coords, p.field)


def meet(k: ProjLine, l: ProjLine) -> ProjPoint:
    _require_same_field(k, l)
    coords = cross(k.coords, l.coords)
    if all(c.is_zero() for c in coords):
        raise DegenerateInputError("meet of coincident lines is undefined")
    return ProjPoint(coords, k.field)


def collinear(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> bool:
    return det3(p.coords, q.coords, r.coords).is_zero()


def collinearity_residual(p: ProjPoint, q: ProjPoint, r: ProjPoint):
    """The raw 3x3 determinant; zero iff the points are collinear."""
    return det3(p.coords, q.coords, r.coords)


def line_chart(l: ProjLine, basis: Tuple[ProjPoint, ProjPoint], p: ProjPoint) -> tuple:
    """Coordinates (alpha, beta) with p = alpha*b1 + beta*b2, up to scale.

    alpha and beta come from cross(p, b2) = alpha*cross(b1, b2) and
    cross(b1, p) = beta*cross(b1, b2), read off at any nonzero slot of
    cross(b1, b2).
    """
    b1, b2 = basis
    if b1 == b2:
        raise DegenerateInputError("chart basis points coincide")
    for q in (b1, b2, p):
        if not incident(q, l):
            raise ProjectiveError(f"{q} is not on the chart line {l}")
    n = cross(b1.coords, b2.coords)
    k = next(i for i, c in enumerate(n) if not c.is_zero())
    alpha = cross(p.coords, b2.coords)[k]
    beta = cross(b1.coords, p.coords)[k]
    return (alpha, beta)


class CrossRatioValue:
    """An element (num : den) of the projective line over the scalar field.

    Infinity is (1 : 0).  Equality is up to scale, so reports comparing
    cross-ratios never divide.
    """

    __slots__ = ("num", "den", "field")

    def __init__(self, num, den, field=None):
        if field is None:
            field = _infer_field((num, den))
        self.num = field.coerce(num)
        self.den = field.coerce(den)
        self.field = field
        if self.num.is_zero() and self.den.is_zero():
            raise ProjectiveError("(0 : 0) is not a cross-ratio value")

    @classmethod
    def harmonic(cls, field=GaussianRational) -> "CrossRatioValue":
        return cls(-field.one(), field.one(), field)

    @classmethod
    def infinity(cls, field=GaussianRational) -> "CrossRatioValue":
        return cls(field.one(), field.zero(), field)

    def is_infinite(self) -> bool:
        return self.den.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_harmonic(self) -> bool:
        return (self.num + self.den).is_zero()

    def plus_one(self) -> "CrossRatioValue":
        """cr + 1 as a projective value; zero exactly at the harmonic position."""
        return CrossRatioValue(self.num + self.den, self.den, self.field)

    def value(self):
        if self.is_infinite():
            raise ProjectiveError("infinite cross-ratio has no scalar value")
        return self.num / self.den

    def __eq__(self, other):
        if not isinstance(other, CrossRatioValue):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self):
        if self.is_infinite():
            return hash(("cr", "inf"))
        return hash(("cr", self.value()))

    def __str__(self):
        return "inf" if self.is_infinite() else str(self.value())

    def __repr__(self):
        return f"CrossRatioValue({self})"


def cross_ratio(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint, p4: ProjPoint) -> CrossRatioValue:
    """Cross-ratio of four collinear points, at most two of them coincident.

    Pinned convention: ([12]*[34] : [14]*[32]); see the module docstring.
    Two coincident points are fine and produce (0:1), (1:0) or (1:1);
    three coincident points leave the value undefined and raise.
    """
    points = (p1, p2, p3, p4)
    for i, j, k in combinations(range(4), 3):
        if points[i] == points[j] and points[j] == points[k]:
            raise DegenerateInputError("cross-ratio is undefined with three coincident points")
    b1, b2 = next(
        (points[i], points[j]) for i, j in combinations(range(4), 2) if points[i] != points[j]
    )
    axis = join(b1, b2)
    for q in points:
        if not incident(q, axis):
            raise ProjectiveError("cross-ratio requires four collinear points")
    charts = [line_chart(axis, (b1, b2), q) for q in points]

    def bracket(i: int, j: int):
        (ai, bi), (aj, bj) = charts[i], charts[j]
        return ai * bj - aj * bi

    return CrossRatioValue(bracket(0, 1) * bracket(2, 3), bracket(0, 3) * bracket(2, 1), p1.field)


def harmonic_conjugate(u: ProjPoint, v: ProjPoint, w: ProjPoint) -> ProjPoint:
    """The point w' with cross_ratio(w', u, w, v) = -1.

    In a chart where w = alpha*u + beta*v the conjugate is
    alpha*u - beta*v; the map is an involution and is undefined at u and v
    themselves.
    """
    if u == v:
        raise DegenerateInputError("harmonic conjugate needs a distinct reference pair")
    if w == u or w == v:
        raise DegenerateInputError("harmonic conjugate is undefined at the reference points")
    axis = join(u, v)
    if not incident(w, axis):
        raise ProjectiveError("harmonic conjugate requires collinear input")
    alpha, beta = line_chart(axis, (u, v), w)
    coords = tuple(alpha * uc - beta * vc for uc, vc in zip(u.coords, v.coords))
    return ProjPoint(coords, u.field)


def perspectivity(center: ProjPoint, source: ProjLine, target: ProjLine, p: ProjPoint) -> ProjPoint:
    """Project p from `center`, mapping `source` onto `target`."""
    if incident(center, source) or incident(center, target):
        raise ProjectiveError("perspectivity center must avoid both lines")
    if not incident(p, source):
        raise ProjectiveError("perspectivity input must lie on the source line")
    return meet(join(center, p), target)


class Projectivity:
    """An invertible linear map of the plane, stored as a 3x3 matrix up to scale.

    Points map by x -> Mx and lines by l -> adj(M)^T l, which is the
    inverse-transpose up to the determinant factor, so incidence is
    preserved exactly.
    """

    __slots__ = ("matrix", "field")

    def __init__(self, rows, field=None):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ProjectiveError("a projectivity needs a 3x3 matrix")
        flat = tuple(e for r in rows for e in r)
        if field is None:
            field = _infer_field(flat)
        flat = field.reduce_content(tuple(field.coerce(e) for e in flat))
        matrix = (flat[0:3], flat[3:6], flat[6:9])
        if det_mat3(matrix).is_zero():
            raise DegenerateInputError("singular matrix is not a projectivity")
        self.matrix = matrix
        self.field = field

    def apply(self, p: ProjPoint) -> ProjPoint:
        if p.field is not self.field:
            raise TypeError("cannot mix scalar backends in one construction")
        return ProjPoint(matvec(self.matrix, p.coords), self.field)

    def apply_line(self, l: ProjLine) -> ProjLine:
        if l.field is not self.field:
            raise TypeError("cannot mix scalar backends in one construction")
        return ProjLine(matvec(transpose(adjugate(self.matrix)), l.coords), self.field)

    def inverse(self) -> "Projectivity":
        return Projectivity(adjugate(self.matrix), self.field)

    def __matmul__(self, other):
        if not isinstance(other, Projectivity):
            return NotImplemented
        if other.field is not self.field:
            raise TypeError("cannot mix scalar backends in one construction")
        return Projectivity(matmul(self.matrix, other.matrix), self.field)

    def __eq__(self, other):
        if not isinstance(other, Projectivity):
            return NotImplemented
        a = tuple(e for r in self.matrix for e in r)
        b = tuple(e for r in other.matrix for e in r)
        k = next(i for i, e in enumerate(a) if not e.is_zero())
        if b[k].is_zero():
            return False
        return all((a[k] * b[i] - b[k] * a[i]).is_zero() for i in range(9))

    def __hash__(self):
        a = tuple(e for r in self.matrix for e in r)
        lead = next(e for e in a if not e.is_zero())
        inv = lead.inv()
        return hash(("projectivity",) + tuple(e * inv for e in a))

    def __repr__(self):
        return f"Projectivity({self.matrix!r})"

    @classmethod
    def identity(cls, field=GaussianRational) -> "Projectivity":
        one, zero = field.one(), field.zero()
        return cls(((one, zero, zero), (zero, one, zero), (zero, zero, one)), field)

    @classmethod
    def _frame_map(cls, points, field):
        """Map sending the standard frame e1, e2, e3, (1:1:1) to the four points."""
        c1, c2, c3, c4 = (p.coords for p in points)
        if det3(c1, c2, c3).is_zero():
            raise DegenerateInputError("frame points are not in general position")
        weights = (det3(c4, c2, c3), det3(c1, c4, c3), det3(c1, c2, c4))
        if any(w.is_zero() for w in weights):
            raise DegenerateInputError("frame points are not in general position")
        columns = (scale_vec(weights[0], c1), scale_vec(weights[1], c2), scale_vec(weights[2], c3))
        return transpose(columns)

    @classmethod
    def from_points(cls, src, dst) -> "Projectivity":
        """The unique projectivity with src[i] -> dst[i], four points each side.

        Both quadruples must be in general position (no three collinear).
        """
        src, dst = tuple(src), tuple(dst)
        if len(src) != 4 or len(dst) != 4:
            raise ProjectiveError("from_points needs 4 source and 4 destination points")
        field = src[0].field
        for p in (*src, *dst):
            if p.field is not field:
                raise TypeError("cannot mix scalar backends in one construction")
        to_src = cls._frame_map(src, field)
        to_dst = cls._frame_map(dst, field)
        return cls(matmul(to_dst, adjugate(to_src)), field)

    @classmethod
    def random(cls, rng: Random, field=GaussianRational, height_bound: int = 10, *, real: bool = False) -> "Projectivity":
        """A random invertible map; entries drawn at the given height, retried if singular."""
        while True:
            rows = tuple(
                tuple(field.random(rng, height_bound, real=real) for _ in range(3))
                for _ in range(3)
            )
            try:
                return cls(rows, field)
            except DegenerateInputError:
                continue
