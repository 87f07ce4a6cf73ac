from fractions import Fraction
from random import Random

import pytest

from conic_butterfly.conics import AffineConicSpec, homogenize_affine_conic
from conic_butterfly.projective import (
    DegenerateInputError,
    ProjPoint,
    ProjectiveError,
    incident,
    join,
    meet,
)
from conic_butterfly.scalars import GaussianRational, PrimeFieldElement
from conic_butterfly.scenarios import (
    ButterflyScenario,
    PlanarScenario,
    RetryBudget,
    RetryCapError,
    affine_spec_from_conic,
    build_scenario,
    random_butterfly_scenario,
    random_conic,
    random_hexagon,
    random_jap_inputs,
    random_mono_inputs,
    random_nut_inputs,
    random_planar_scenario,
    random_reflection_frame,
    random_sack_inputs,
    random_scenario,
    reference_base,
    reference_conic,
)

G = GaussianRational
P = PrimeFieldElement


def pt(*coords):
    return ProjPoint(tuple(G.coerce(c) for c in coords), G)


def affine(x, y):
    return pt(Fraction(x), Fraction(y), 1)


CIRCLE = AffineConicSpec(1, 1, 0, 0, 0, -1, G)


class TestReference:
    def test_reference_conic_cached(self):
        assert reference_conic(G) is reference_conic(G)
        assert reference_conic(P) is reference_conic(P)
        assert reference_conic(G) is not reference_conic(P)

    def test_base_lies_on_reference(self):
        for field in (G, P):
            assert reference_conic(field).contains(reference_base(field))

    def test_affine_spec_round_trip(self):
        conic = homogenize_affine_conic(CIRCLE)
        spec = affine_spec_from_conic(conic)
        assert homogenize_affine_conic(spec) == conic

    def test_affine_spec_needs_real_conic(self):
        conic, _ = random_conic(Random(1), G, 4)
        if all(e.is_real() for e in conic.upper_entries()):
            pytest.skip("random draw landed on a real conic")
        with pytest.raises(ProjectiveError):
            affine_spec_from_conic(conic)


class TestRetryBudget:
    def test_cap_enforced(self):
        budget = RetryBudget(cap=2)
        budget.tick()
        budget.tick()
        with pytest.raises(RetryCapError):
            budget.tick()

    def test_error_names_last_rejection(self):
        budget = RetryBudget(cap=0)
        with pytest.raises(RetryCapError, match="tangent chord"):
            budget.tick("tangent chord")


class TestBuildScenario:
    def test_build_validates_membership(self):
        conic = homogenize_affine_conic(CIRCLE)
        with pytest.raises(ProjectiveError):
            build_scenario(conic, affine(0, 0), affine(3, 4), affine(1, 1),
                           affine(0, 1), affine(0, -1), affine(1, 0), affine(-1, 0))

    def test_build_rejects_coincident_ab(self):
        conic = homogenize_affine_conic(CIRCLE)
        a = affine(0, 1)
        with pytest.raises(DegenerateInputError):
            build_scenario(conic, a, a, affine(0, "1/2"),
                           affine(1, 0), affine(-1, 0), affine("3/5", "4/5"), affine("-3/5", "-4/5"))

    def test_build_requires_m_on_chord(self):
        conic = homogenize_affine_conic(CIRCLE)
        with pytest.raises(ProjectiveError):
            build_scenario(conic, affine(0, 1), affine(0, -1), affine(1, 1),
                           affine(1, 0), affine(-1, 0), affine("3/5", "4/5"), affine("-3/5", "-4/5"))

    def test_chord_must_contain_m(self):
        conic = homogenize_affine_conic(CIRCLE)
        with pytest.raises(ProjectiveError):
            build_scenario(conic, affine(0, 1), affine(0, -1), affine(0, 0),
                           affine(1, 0), affine("3/5", "4/5"),
                           affine("4/5", "3/5"), affine("-4/5", "-3/5"))


class TestRandomButterfly:
    def test_structural_invariants(self):
        for seed in range(6):
            sc = random_butterfly_scenario(Random(seed), height_bound=6)
            assert sc.degenerate_reason is None
            for w in (sc.a, sc.b, sc.r, sc.s, sc.f, sc.g):
                assert sc.conic.contains(w)
            ab = join(sc.a, sc.b)
            assert incident(sc.m, ab)
            assert incident(sc.m, join(sc.r, sc.s))
            assert incident(sc.m, join(sc.f, sc.g))
            assert incident(sc.i, ab) and incident(sc.j, ab)
            assert incident(sc.p, ab)

    def test_seeded_determinism(self):
        one = random_butterfly_scenario(Random(99), height_bound=7)
        two = random_butterfly_scenario(Random(99), height_bound=7)
        assert one.conic == two.conic
        assert [w for _n, w in one.inputs()] == [w for _n, w in two.inputs()]

    def test_prime_backend(self):
        sc = random_butterfly_scenario(Random(3), P, height_bound=6)
        assert sc.field is P
        assert sc.degenerate_reason is None
        assert sc.conic.contains(sc.a)


class TestRandomPlanar:
    def test_structural_invariants(self):
        for seed in range(4):
            sc = random_planar_scenario(Random(seed), height_bound=6)
            assert sc.degenerate_reason is None
            for _name, w in sc.inputs():
                assert w.is_real()
            assert sc.conic.contains(sc.r) and sc.conic.contains(sc.v)
            assert incident(sc.m, join(sc.a, sc.b))

    def test_explicit_spec_used(self):
        base = affine(0, 1)
        sc = random_planar_scenario(Random(5), height_bound=6, spec=CIRCLE, base=base)
        assert sc.spec is CIRCLE
        assert sc.conic == homogenize_affine_conic(CIRCLE)

    def test_explicit_spec_needs_base(self):
        with pytest.raises(ProjectiveError):
            random_planar_scenario(Random(5), spec=CIRCLE)
        with pytest.raises(ProjectiveError):
            random_planar_scenario(Random(5), spec=CIRCLE, base=affine(2, 2))


class TestDispatch:
    def test_kinds(self):
        assert isinstance(random_scenario(Random(1), kind="damn"), ButterflyScenario)
        assert isinstance(random_scenario(Random(1), kind="cutl"), PlanarScenario)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            random_scenario(Random(1), kind="bogus")

    def test_cutl_rejects_prime_backend(self):
        with pytest.raises(ProjectiveError):
            random_scenario(Random(1), P, kind="cutl")


class TestLemmaInputs:
    def test_reflection_frame_plain(self):
        frame, par = random_reflection_frame(Random(2), height_bound=6)
        assert frame.u is None
        assert not incident(frame.pole, frame.axis)
        assert par.conic == frame.conic

    def test_reflection_frame_with_chord(self):
        frame, _par = random_reflection_frame(Random(2), height_bound=6, with_chord=True)
        assert frame.conic.contains(frame.u) and frame.conic.contains(frame.v)
        assert join(frame.u, frame.v) == frame.axis

    def test_mono_forward_candidate_is_axis_meet(self):
        frame, l, y, y_prime, m = random_mono_inputs(Random(4))
        assert m == meet(l, frame.axis)
        assert frame.conic.contains(y) and frame.conic.contains(y_prime)
        assert incident(frame.pole, l)

    def test_mono_converse_candidate_off_axis(self):
        frame, l, _y, _y_prime, m = random_mono_inputs(Random(4), converse=True)
        assert incident(m, l)
        assert m != meet(l, frame.axis)

    def test_jap_inputs(self):
        frame, y, u, l2 = random_jap_inputs(Random(6))
        assert incident(u, frame.axis)
        assert incident(frame.pole, l2)
        assert y != frame.pole

    def test_nut_inputs(self):
        frame, y, z = random_nut_inputs(Random(7))
        assert y != z
        assert not incident(frame.pole, join(y, z))

    def test_sack_inputs(self):
        frame, m, r, s = random_sack_inputs(Random(8))
        assert incident(m, frame.axis)
        assert incident(m, join(r, s))
        assert r != s

    def test_hexagon(self):
        conic, hexagon = random_hexagon(Random(9), height_bound=6)
        assert len(hexagon) == 6
        assert len(set(hexagon)) == 6
        for w in hexagon:
            assert conic.contains(w)
