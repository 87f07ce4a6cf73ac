"""Harmonic reflection over a conic chord.

The frame is a non-tangent axis line k together with its pole p.  A point
y maps to the harmonic conjugate of y with respect to p and n = k iff py,
which fixes k point-wise, fixes the pencil of lines through p line-wise,
is an involution away from p, and preserves the conic.  The map is
undefined at the pole itself.

The chord endpoints u, v = k iff conic are carried by the frame only when
they are representable in the scalar field; nothing downstream ever needs
them except the one lemma that names them.
"""

from __future__ import annotations

from typing import Optional

from ._linalg import add_vec, cross
from .conics import Conic
from .projective import (
    DegenerateInputError,
    ProjectiveError,
    ProjLine,
    ProjPoint,
    harmonic_conjugate,
    incident,
    join,
    meet,
)


class ReflectionFrame:
    """Axis + pole pair driving the reflection; built from the conic and axis."""

    __slots__ = ("conic", "axis", "pole", "u", "v")

    def __init__(self, conic: Conic, axis: ProjLine,
                 u: Optional[ProjPoint] = None, v: Optional[ProjPoint] = None):
        if axis.field is not conic.field:
            raise TypeError("cannot mix scalar backends in one construction")
        pole = conic.pole(axis)
        if incident(pole, axis):
            raise DegenerateInputError("axis is tangent to the conic; the reflection degenerates")
        if (u is None) != (v is None):
            raise ProjectiveError("chord endpoints must be supplied together")
        if u is not None:
            if u == v:
                raise DegenerateInputError("chord endpoints must be distinct")
            for w in (u, v):
                if not conic.contains(w):
                    raise ProjectiveError(f"{w} is not on the conic")
                if not incident(w, axis):
                    raise ProjectiveError(f"{w} is not on the axis")
        self.conic = conic
        self.axis = axis
        self.pole = pole
        self.u = u
        self.v = v

    def reflect_point(self, y: ProjPoint) -> ProjPoint:
        if y == self.pole:
            raise DegenerateInputError("reflection is undefined at the pole")
        if incident(y, self.axis):
            return y
        ray = join(self.pole, y)
        n = meet(self.axis, ray)
        return harmonic_conjugate(self.pole, n, y)

    def reflect_line(self, l: ProjLine) -> ProjLine:
        """Reflect a line; anything through the pole is self-reflected."""
        if incident(self.pole, l):
            return l
        one, zero = l.field.one(), l.field.zero()
        samples = []
        for e in ((one, zero, zero), (zero, one, zero), (zero, zero, one)):
            c = cross(l.coords, e)
            if all(x.is_zero() for x in c):
                continue
            q = ProjPoint(c, l.field)
            if q not in samples:
                samples.append(q)
            if len(samples) == 2:
                break
        p1, p2 = samples
        out = join(self.reflect_point(p1), self.reflect_point(p2))
        # cross-check with an independent third point of l
        p3 = ProjPoint(add_vec(p1.coords, p2.coords), l.field)
        if not incident(self.reflect_point(p3), out):
            raise AssertionError("reflected line is sample-dependent; arithmetic bug")
        return out


def reflection_frame(conic: Conic, axis: ProjLine,
                     u: Optional[ProjPoint] = None, v: Optional[ProjPoint] = None) -> ReflectionFrame:
    return ReflectionFrame(conic, axis, u, v)


def reflect_point(frame: ReflectionFrame, y: ProjPoint) -> ProjPoint:
    return frame.reflect_point(y)


def reflect_line(frame: ReflectionFrame, l: ProjLine) -> ProjLine:
    return frame.reflect_line(l)
