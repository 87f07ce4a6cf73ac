"""Named butterfly configurations and their seeded random generation.

A scenario bundles the conic with every named point of the statement
(a, b, m, the two chords, and the derived meets and harmonic conjugate).
Construction validates all memberships and incidences and classifies the
exceptional positions as degenerate rather than raising, because the
randomized campaigns will occasionally land on them.

Generation draws everything through the rational chord parametrization of
a transformed reference conic, so every produced coordinate stays in the
scalar field; structurally unusable draws are rejected and retried under a
budget, and exhausting the budget is reported distinctly.
"""

from __future__ import annotations

from random import Random
from typing import Optional, Tuple

from ._linalg import add_vec, cross, scale_vec
from .conics import (
    AffineConicSpec,
    Conic,
    ConicParametrization,
    homogenize_affine_conic,
    second_intersection,
    transform_conic,
)
from .projective import (
    DegenerateInputError,
    ProjectiveError,
    ProjLine,
    ProjPoint,
    Projectivity,
    harmonic_conjugate,
    incident,
    join,
    meet,
)
from .reflection import ReflectionFrame
from .scalars import GaussianRational


class RetryCapError(ProjectiveError):
    """A generator rejected more draws than its budget allows."""


class RetryBudget:
    """Counts rejected draws; raises past the cap so pathological seeds surface."""

    __slots__ = ("cap", "spent")
    DEFAULT_CAP = 200

    def __init__(self, cap: int = DEFAULT_CAP):
        self.cap = cap
        self.spent = 0

    def tick(self, what: str = "draw") -> None:
        self.spent += 1
        if self.spent > self.cap:
            raise RetryCapError(f"rejected {self.spent} draws (last: {what}); giving up")


_REFERENCE_CACHE: dict = {}


def reference_conic(field=GaussianRational) -> Conic:
    """The conic xz - y^2 = 0, the fixed starting shape for random generation."""
    cached = _REFERENCE_CACHE.get(field)
    if cached is None:
        one, zero = field.one(), field.zero()
        half = (one + one).inv()
        conic = Conic(((zero, zero, half), (zero, -one, zero), (half, zero, zero)), field)
        cached = (conic, ProjPoint((one, zero, zero), field))
        _REFERENCE_CACHE[field] = cached
    return cached[0]


def reference_base(field=GaussianRational) -> ProjPoint:
    reference_conic(field)
    return _REFERENCE_CACHE[field][1]


def affine_spec_from_conic(conic: Conic) -> AffineConicSpec:
    """Read affine coefficients off a real symmetric form, rescaling first."""
    entries = conic.upper_entries()
    lead = next(e for e in entries if not e.is_zero())
    inv = lead.inv()
    m11, m12, m13, m22, m23, m33 = (e * inv for e in entries)
    vals = (m11, m12, m13, m22, m23, m33)
    if not all(v.is_real() for v in vals):
        raise ProjectiveError("conic is not real; no affine coefficients exist")
    two = conic.field.one() + conic.field.one()
    return AffineConicSpec(m11, m22, two * m12, two * m13, two * m23, m33, conic.field)


# ----------------------------------------------------------------------
# scenario containers


class ButterflyScenario:
    """Conic, chord ab with interior point m, two chords through m, and the
    derived points i = rg^ab, j = fs^ab, p = harmonic conjugate of m in {a, b}.

    `degenerate_reason` is set (and i, j left None) when the configuration
    collapses; checks turn that into a DEGENERATE verdict.
    """

    __slots__ = ("conic", "a", "b", "m", "r", "s", "f", "g",
                 "i", "j", "p", "degenerate_reason", "field")

    def __init__(self, conic, a, b, m, r, s, f, g, i, j, p, degenerate_reason):
        self.conic = conic
        self.a, self.b, self.m = a, b, m
        self.r, self.s, self.f, self.g = r, s, f, g
        self.i, self.j, self.p = i, j, p
        self.degenerate_reason = degenerate_reason
        self.field = conic.field

    def inputs(self) -> Tuple[tuple, ...]:
        return (("a", self.a), ("b", self.b), ("m", self.m),
                ("r", self.r), ("s", self.s), ("f", self.f), ("g", self.g))

    def transform(self, t: Projectivity) -> "ButterflyScenario":
        return build_scenario(
            transform_conic(t, self.conic),
            t.apply(self.a), t.apply(self.b), t.apply(self.m),
            t.apply(self.r), t.apply(self.s), t.apply(self.f), t.apply(self.g),
        )


class PlanarScenario:
    """The real-plane variant: chords (r, s) and (u, v) through m, with
    p = ru^ab, q = sv^ab and m' the harmonic conjugate of m in {a, b}."""

    __slots__ = ("spec", "conic", "a", "b", "m", "r", "s", "u", "v",
                 "p", "q", "m_prime", "degenerate_reason", "field")

    def __init__(self, spec, conic, a, b, m, r, s, u, v, p, q, m_prime, degenerate_reason):
        self.spec = spec
        self.conic = conic
        self.a, self.b, self.m = a, b, m
        self.r, self.s, self.u, self.v = r, s, u, v
        self.p, self.q, self.m_prime = p, q, m_prime
        self.degenerate_reason = degenerate_reason
        self.field = conic.field

    def inputs(self) -> Tuple[tuple, ...]:
        return (("a", self.a), ("b", self.b), ("m", self.m),
                ("r", self.r), ("s", self.s), ("u", self.u), ("v", self.v))


def _validate_chord(conic, end1, end2, m, label: str) -> Optional[str]:
    """Membership errors raise; structural collapse returns a reason string."""
    for w in (end1, end2):
        if not conic.contains(w):
            raise ProjectiveError(f"chord point {w} of {label} is not on the conic")
    if end1 == end2:
        return f"tangent chord {label}"
    if not incident(m, join(end1, end2)):
        raise ProjectiveError(f"chord {label} does not pass through m")
    return None


def build_scenario(conic: Conic, a, b, m, r, s, f, g) -> ButterflyScenario:
    for w in (a, b):
        if not conic.contains(w):
            raise ProjectiveError(f"{w} is not on the conic")
    if a == b:
        raise DegenerateInputError("a and b must be distinct")
    if m == a or m == b:
        raise ProjectiveError("m must differ from a and b")
    ab = join(a, b)
    if not incident(m, ab):
        raise ProjectiveError("m must lie on the chord ab")

    reason = _validate_chord(conic, r, s, m, "(r,s)") or _validate_chord(conic, f, g, m, "(f,g)")
    p = harmonic_conjugate(a, b, m)
    if reason is None:
        rs, fg = join(r, s), join(f, g)
        if rs == ab or fg == ab:
            reason = "chord coincides with ab"
        elif rs == fg:
            reason = "coincident chords"
    i = j = None
    if reason is None:
        try:
            i = meet(join(r, g), ab)
            j = meet(join(f, s), ab)
        except DegenerateInputError:
            reason = "derived meet undefined"
    return ButterflyScenario(conic, a, b, m, r, s, f, g, i, j, p, reason)


def build_planar_scenario(spec: AffineConicSpec, a, b, m, r, s, u, v) -> PlanarScenario:
    conic = homogenize_affine_conic(spec)
    for name, w in (("a", a), ("b", b), ("m", m), ("r", r), ("s", s), ("u", u), ("v", v)):
        if not w.is_real():
            raise ProjectiveError(f"planar scenario requires real coordinates, but {name} = {w}")
    for w in (a, b):
        if not conic.contains(w):
            raise ProjectiveError(f"{w} is not on the conic")
    if a == b:
        raise DegenerateInputError("a and b must be distinct")
    if m == a or m == b:
        raise ProjectiveError("m must differ from a and b")
    ab = join(a, b)
    if not incident(m, ab):
        raise ProjectiveError("m must lie on the chord ab")

    reason = _validate_chord(conic, r, s, m, "(r,s)") or _validate_chord(conic, u, v, m, "(u,v)")
    m_prime = harmonic_conjugate(a, b, m)
    if reason is None:
        rs, uv = join(r, s), join(u, v)
        if rs == ab or uv == ab:
            reason = "chord coincides with ab"
        elif rs == uv:
            reason = "coincident chords"
    p = q = None
    if reason is None:
        try:
            p = meet(join(r, u), ab)
            q = meet(join(s, v), ab)
        except DegenerateInputError:
            reason = "derived meet undefined"
    return PlanarScenario(spec, conic, a, b, m, r, s, u, v, p, q, m_prime, reason)


# ----------------------------------------------------------------------
# random generation


def _random_nonzero(rng: Random, field, height: int, budget: RetryBudget, *, real: bool = False):
    while True:
        x = field.random(rng, height, real=real)
        if not x.is_zero():
            return x
        budget.tick("nonzero scalar")


def _random_point(rng: Random, field, height: int, budget: RetryBudget, *, real: bool = False) -> ProjPoint:
    while True:
        coords = tuple(field.random(rng, height, real=real) for _ in range(3))
        if not all(c.is_zero() for c in coords):
            return ProjPoint(coords, field)
        budget.tick("point draw")


def _random_conic_point(par: ConicParametrization, rng: Random, height: int,
                        budget: RetryBudget, *, real: bool = False, avoid=()) -> ProjPoint:
    field = par.conic.field
    while True:
        q = par.point(field.random(rng, height, real=real))
        if all(q != w for w in avoid):
            return q
        budget.tick("conic point collision")


def random_conic(rng: Random, field=GaussianRational, height_bound: int = 10,
                 *, real: bool = False) -> Tuple[Conic, ProjPoint]:
    """A random nondegenerate conic with a known point: a projective image
    of the reference conic, whose base point rides along."""
    t = Projectivity.random(rng, field, height_bound, real=real)
    return transform_conic(t, reference_conic(field)), t.apply(reference_base(field))


def _chord_through(conic: Conic, par: ConicParametrization, m: ProjPoint,
                   rng: Random, height: int, budget: RetryBudget,
                   *, real: bool = False, avoid=()) -> Tuple[ProjPoint, ProjPoint]:
    """A chord (end1, end2) through m with both endpoints off the avoid list."""
    while True:
        end1 = _random_conic_point(par, rng, height, budget, real=real, avoid=avoid)
        end2 = second_intersection(conic, join(end1, m), end1)
        if end2 == end1:
            budget.tick("tangent chord")
            continue
        if any(end2 == w for w in avoid):
            budget.tick("chord endpoint collision")
            continue
        return end1, end2


def random_butterfly_scenario(rng: Random, field=GaussianRational, height_bound: int = 10,
                              *, real: bool = False, budget: Optional[RetryBudget] = None) -> ButterflyScenario:
    budget = budget if budget is not None else RetryBudget()
    conic, base = random_conic(rng, field, height_bound, real=real)
    par = ConicParametrization(conic, base)
    a = _random_conic_point(par, rng, height_bound, budget, real=real)
    b = _random_conic_point(par, rng, height_bound, budget, real=real, avoid=(a,))
    mu = _random_nonzero(rng, field, height_bound, budget, real=real)
    m = ProjPoint(add_vec(a.coords, scale_vec(mu, b.coords)), field)
    r, s = _chord_through(conic, par, m, rng, height_bound, budget, real=real, avoid=(a, b))
    f, g = _chord_through(conic, par, m, rng, height_bound, budget, real=real, avoid=(a, b, r, s))
    scenario = build_scenario(conic, a, b, m, r, s, f, g)
    if scenario.degenerate_reason is not None:
        raise AssertionError(f"generator produced a degenerate scenario: {scenario.degenerate_reason}")
    return scenario


def random_planar_scenario(rng: Random, field=GaussianRational, height_bound: int = 10,
                           *, spec: Optional[AffineConicSpec] = None,
                           base: Optional[ProjPoint] = None,
                           budget: Optional[RetryBudget] = None) -> PlanarScenario:
    """A real scenario; without an explicit spec, a random real conic is used."""
    budget = budget if budget is not None else RetryBudget()
    if spec is None:
        conic, base = random_conic(rng, GaussianRational, height_bound, real=True)
        spec = affine_spec_from_conic(conic)
        conic = homogenize_affine_conic(spec)
    else:
        conic = homogenize_affine_conic(spec)
        if base is None:
            raise ProjectiveError("an explicit spec needs a known rational base point")
        if not conic.contains(base):
            raise ProjectiveError("base point is not on the conic")
    field = spec.field
    par = ConicParametrization(conic, base)
    a = _random_conic_point(par, rng, height_bound, budget, real=True)
    b = _random_conic_point(par, rng, height_bound, budget, real=True, avoid=(a,))
    mu = _random_nonzero(rng, field, height_bound, budget, real=True)
    m = ProjPoint(add_vec(a.coords, scale_vec(mu, b.coords)), field)
    r, s = _chord_through(conic, par, m, rng, height_bound, budget, real=True, avoid=(a, b))
    u, v = _chord_through(conic, par, m, rng, height_bound, budget, real=True, avoid=(a, b, r, s))
    scenario = build_planar_scenario(spec, a, b, m, r, s, u, v)
    if scenario.degenerate_reason is not None:
        raise AssertionError(f"generator produced a degenerate scenario: {scenario.degenerate_reason}")
    return scenario


def random_scenario(rng: Random, field=GaussianRational, height_bound: int = 10,
                    *, kind: str = "damn", budget: Optional[RetryBudget] = None):
    """Dispatch on the theorem flavor: 'damn' draws over the full complex
    field, 'cutl' draws a real-plane configuration."""
    if kind == "damn":
        return random_butterfly_scenario(rng, field, height_bound, budget=budget)
    if kind == "cutl":
        if field is not GaussianRational:
            raise ProjectiveError("planar scenarios require the exact Gaussian backend")
        return random_planar_scenario(rng, field, height_bound, budget=budget)
    raise ValueError(f"unknown scenario kind {kind!r}")


# ----------------------------------------------------------------------
# lemma-shaped input generation


def random_reflection_frame(rng: Random, field=GaussianRational, height_bound: int = 10,
                            *, real: bool = False, with_chord: bool = False,
                            budget: Optional[RetryBudget] = None) -> Tuple[ReflectionFrame, ConicParametrization]:
    """A frame on a random conic.  With `with_chord` the axis is the join of
    two rational conic points (attached as u, v); otherwise the axis is an
    arbitrary non-tangent line, so its conic points typically leave the field."""
    budget = budget if budget is not None else RetryBudget()
    conic, base = random_conic(rng, field, height_bound, real=real)
    par = ConicParametrization(conic, base)
    if with_chord:
        u = _random_conic_point(par, rng, height_bound, budget, real=real)
        v = _random_conic_point(par, rng, height_bound, budget, real=real, avoid=(u,))
        return ReflectionFrame(conic, join(u, v), u, v), par
    while True:
        axis_coords = _random_point(rng, field, height_bound, budget, real=real).coords
        axis = ProjLine(axis_coords, field)
        if not incident(conic.pole(axis), axis):
            return ReflectionFrame(conic, axis), par
        budget.tick("tangent axis")


def random_mono_inputs(rng: Random, field=GaussianRational, height_bound: int = 10,
                       *, converse: bool = False, budget: Optional[RetryBudget] = None):
    """(frame, l, y, y', m): a pole line with its rational conic pair and a
    candidate m, either the axis meet (forward) or a generic other point."""
    budget = budget if budget is not None else RetryBudget()
    frame, par = random_reflection_frame(rng, field, height_bound, budget=budget)
    while True:
        y = _random_conic_point(par, rng, height_bound, budget)
        l = join(frame.pole, y)
        y_prime = second_intersection(frame.conic, l, y)
        if y_prime != y:
            break
        budget.tick("tangent pole line")
    if converse:
        lam = _random_nonzero(rng, field, height_bound, budget)
        m = ProjPoint(add_vec(y.coords, scale_vec(lam, y_prime.coords)), field)
    else:
        m = meet(l, frame.axis)
    return frame, l, y, y_prime, m


def random_jap_inputs(rng: Random, field=GaussianRational, height_bound: int = 10,
                      *, budget: Optional[RetryBudget] = None):
    """(frame, y, u, l2) with the structural collapses rejected up front."""
    budget = budget if budget is not None else RetryBudget()
    frame, _par = random_reflection_frame(rng, field, height_bound, budget=budget)
    axis_pts = _axis_sample_points(frame.axis)
    while True:
        y = _random_point(rng, field, height_bound, budget)
        if y == frame.pole:
            budget.tick("y at pole")
            continue
        lam = _random_nonzero(rng, field, height_bound, budget)
        u = ProjPoint(add_vec(axis_pts[0].coords, scale_vec(lam, axis_pts[1].coords)), field)
        if u == y:
            budget.tick("u equals y")
            continue
        if incident(frame.pole, join(y, u)):
            budget.tick("yu through pole")
            continue
        w = _random_point(rng, field, height_bound, budget)
        if w == frame.pole:
            budget.tick("w at pole")
            continue
        l2 = join(frame.pole, w)
        if l2 == join(frame.pole, y):
            budget.tick("l2 along py")
            continue
        return frame, y, u, l2


def random_nut_inputs(rng: Random, field=GaussianRational, height_bound: int = 10,
                      *, budget: Optional[RetryBudget] = None):
    """(frame, y, z) with join(y, z) not self-reflected."""
    budget = budget if budget is not None else RetryBudget()
    frame, _par = random_reflection_frame(rng, field, height_bound, budget=budget)
    while True:
        y = _random_point(rng, field, height_bound, budget)
        z = _random_point(rng, field, height_bound, budget)
        if y == frame.pole or z == frame.pole or y == z:
            budget.tick("degenerate pair")
            continue
        yz = join(y, z)
        if incident(frame.pole, yz) or yz == frame.axis:
            budget.tick("self-reflected line")
            continue
        return frame, y, z


def random_sack_inputs(rng: Random, field=GaussianRational, height_bound: int = 10,
                       *, budget: Optional[RetryBudget] = None):
    """(frame-with-chord, m, r, s): m on the axis, chord (r, s) through m."""
    budget = budget if budget is not None else RetryBudget()
    frame, par = random_reflection_frame(rng, field, height_bound, with_chord=True, budget=budget)
    lam = _random_nonzero(rng, field, height_bound, budget)
    m = ProjPoint(add_vec(frame.u.coords, scale_vec(lam, frame.v.coords)), field)
    r, s = _chord_through(frame.conic, par, m, rng, height_bound, budget, avoid=(frame.u, frame.v))
    return frame, m, r, s


def random_hexagon(rng: Random, field=GaussianRational, height_bound: int = 10,
                   *, budget: Optional[RetryBudget] = None) -> Tuple[Conic, tuple]:
    """A random conic with six pairwise distinct points on it."""
    budget = budget if budget is not None else RetryBudget()
    conic, base = random_conic(rng, field, height_bound)
    par = ConicParametrization(conic, base)
    # distinct parameters give distinct points, so dedupe on the parameter
    seen = set()
    points = []
    while len(points) < 6:
        t = field.random(rng, height_bound)
        if t in seen:
            budget.tick("conic point collision")
            continue
        seen.add(t)
        points.append(par.point(t))
    return conic, tuple(points)


def _axis_sample_points(axis: ProjLine) -> Tuple[ProjPoint, ProjPoint]:
    """Two distinct points of the axis, picked from the coordinate frame."""
    field = axis.field
    one, zero = field.one(), field.zero()
    found = []
    for e in ((one, zero, zero), (zero, one, zero), (zero, zero, one)):
        c = cross(axis.coords, e)
        if all(x.is_zero() for x in c):
            continue
        q = ProjPoint(c, field)
        if all(q != w for w in found):
            found.append(q)
        if len(found) == 2:
            return tuple(found)
    raise ProjectiveError("could not sample the axis")
