from fractions import Fraction
from random import Random

import pytest

from conic_butterfly.projective import CrossRatioValue, ProjPoint
from conic_butterfly.reports import Verdict, exit_status
from conic_butterfly.scalars import GaussianRational, PrimeFieldElement
from conic_butterfly.scenario_io import (
    Expect,
    ScenarioDocument,
    ScenarioParseError,
    butterfly_document,
    frame_document,
    hexagon_document,
    parse_scenario,
    planar_document,
    run_document,
    serialize_scenario,
)
from conic_butterfly.scenarios import (
    random_butterfly_scenario,
    random_hexagon,
    random_planar_scenario,
    random_sack_inputs,
)

G = GaussianRational

MINIMAL = """\
check nut
backend gauss
conic symmetric 0 1/2 1/2 0 -1 0
line k (1 : 0 : 0)
point y (1 : 1 : 1)
point z (1 : 2 : 3)
"""


class TestParsing:
    def test_minimal_document(self):
        doc = parse_scenario(MINIMAL)
        assert doc.check == "nut"
        assert doc.field is G
        assert set(doc.points) == {"y", "z"}
        assert set(doc.lines) == {"k"}

    def test_comments_and_blank_lines_ignored(self):
        noisy = "# heading\n\n" + MINIMAL.replace(
            "point y (1 : 1 : 1)", "point y (1 : 1 : 1)  # a note")
        assert parse_scenario(noisy) == parse_scenario(MINIMAL)

    def test_fixture_documents(self, fixture_text):
        for name, check in (("lemma1", "mono"),
                            ("butterfly_circle", "damn"),
                            ("cutl_hyperbola", "cutl")):
            doc = parse_scenario(fixture_text(name))
            assert doc.check == check
            assert doc.expects

    def test_unknown_key(self):
        with pytest.raises(ScenarioParseError, match="line 1.*unknown key"):
            parse_scenario("pointt y (1 : 0 : 0)\n" + MINIMAL)

    def test_unknown_check(self):
        with pytest.raises(ScenarioParseError, match="unknown check"):
            parse_scenario(MINIMAL.replace("check nut", "check lemma_one"))

    def test_zero_point_rejected_with_line_number(self):
        bad = MINIMAL.replace("point y (1 : 1 : 1)", "point y (0 : 0 : 0)")
        with pytest.raises(ScenarioParseError, match="line 5"):
            parse_scenario(bad)

    def test_duplicate_name(self):
        bad = MINIMAL + "point y (1 : 2 : 2)\n"
        with pytest.raises(ScenarioParseError, match="duplicate name"):
            parse_scenario(bad)

    def test_backend_must_precede_coordinates(self):
        lines = MINIMAL.splitlines()
        reordered = "\n".join([lines[0]] + lines[2:4] + ["backend gauss"] + lines[4:])
        with pytest.raises(ScenarioParseError, match="before any coordinates"):
            parse_scenario(reordered)

    def test_unknown_backend(self):
        with pytest.raises(ScenarioParseError, match="unknown backend"):
            parse_scenario(MINIMAL.replace("backend gauss", "backend float"))

    def test_missing_required_point(self):
        text = "\n".join(l for l in MINIMAL.splitlines() if not l.startswith("point z"))
        with pytest.raises(ScenarioParseError, match="needs point 'z'"):
            parse_scenario(text)

    def test_missing_conic(self):
        text = "\n".join(l for l in MINIMAL.splitlines() if not l.startswith("conic"))
        with pytest.raises(ScenarioParseError, match="declares no conic"):
            parse_scenario(text)

    def test_on_conic_membership_enforced(self):
        text = """\
check pascal
conic affine 1 1 0 0 0 -1
point p1 (0 : 1 : 1)
point p2 (0 : -1 : 1)
point p3 (1 : 0 : 1)
point p4 (-1 : 0 : 1)
point p5 (3 : 4 : 5)
point p6 (1 : 1 : 1)
"""
        with pytest.raises(ScenarioParseError, match="line 8.*not on the conic"):
            parse_scenario(text)

    def test_affine_points(self):
        text = MINIMAL.replace("point y (1 : 1 : 1)", "point y affine (1, 1)")
        doc = parse_scenario(text)
        assert doc.points["y"] == ProjPoint((G(1), G(1), G(1)), G)

    def test_param_points_need_base(self):
        text = MINIMAL.replace("point y (1 : 1 : 1)", "point y param 3")
        with pytest.raises(ScenarioParseError, match="conic and base"):
            parse_scenario(text)

    def test_param_points(self):
        text = """\
check pascal
conic affine 1 1 0 0 0 -1
base (0 : 1 : 1)
point p1 param 1
point p2 param 2
point p3 param 3
point p4 param 4
point p5 param 5
point p6 param 1 2
"""
        doc = parse_scenario(text)
        for w in doc.points.values():
            assert doc.conic.contains(w)
        assert len(set(doc.points.values())) == 6

    def test_base_must_lie_on_conic(self):
        text = "check pascal\nconic affine 1 1 0 0 0 -1\nbase (2 : 2 : 1)\n"
        with pytest.raises(ScenarioParseError, match="base point is not on the conic"):
            parse_scenario(text)

    def test_conic_from_five_points(self):
        text = """\
check nut
conic points (0 : 1 : 1) (0 : -1 : 1) (1 : 0 : 1) (-1 : 0 : 1) (3 : 4 : 5)
line k (1 : 0 : 2)
point y (1 : 1 : 1)
point z (1 : 2 : 2)
"""
        doc = parse_scenario(text)
        assert doc.conic.contains(ProjPoint((G(3), G(4), G(5)), G))

    def test_degenerate_conic_rejected(self):
        text = MINIMAL.replace("conic symmetric 0 1/2 1/2 0 -1 0",
                               "conic symmetric 1 0 0 0 0 0")
        with pytest.raises(ScenarioParseError, match="line 3"):
            parse_scenario(text)

    def test_prime_backend(self):
        text = MINIMAL.replace("backend gauss", "backend prime").replace(
            "conic symmetric 0 1/2 1/2 0 -1 0", "conic symmetric 0 1 1 0 -2 0")
        doc = parse_scenario(text)
        assert doc.field is PrimeFieldElement


class TestRoundTrip:
    def test_fixtures_round_trip(self, fixture_text):
        for name in ("lemma1", "butterfly_circle", "cutl_hyperbola"):
            doc = parse_scenario(fixture_text(name))
            assert parse_scenario(serialize_scenario(doc)) == doc

    def test_builder_documents_round_trip(self):
        docs = [
            butterfly_document(random_butterfly_scenario(Random(3), height_bound=5)),
            planar_document(random_planar_scenario(Random(4), height_bound=5)),
            hexagon_document(*random_hexagon(Random(5), height_bound=5)),
        ]
        frame, m, r, s = random_sack_inputs(Random(6), height_bound=5)
        docs.append(frame_document("sack", frame, {"m": m, "r": r, "s": s}, {}))
        for doc in docs:
            text = serialize_scenario(doc)
            assert parse_scenario(text) == doc
            assert parse_scenario(serialize_scenario(parse_scenario(text))) == doc

    def test_prime_document_round_trip(self):
        doc = butterfly_document(random_butterfly_scenario(Random(7), PrimeFieldElement,
                                                           height_bound=5))
        again = parse_scenario(serialize_scenario(doc))
        assert again == doc
        assert again.field is PrimeFieldElement


class TestRunning:
    def test_fixtures_all_hold(self, fixture_text):
        for name in ("lemma1", "butterfly_circle", "cutl_hyperbola"):
            reports = run_document(parse_scenario(fixture_text(name)))
            assert [r.verdict for r in reports] == [Verdict.HOLDS, Verdict.HOLDS]
            assert exit_status(reports) == 0

    def test_derived_partners_match_explicit(self, fixture_text):
        doc = parse_scenario(fixture_text("butterfly_circle"))
        explicit = run_document(doc)[0]
        assert explicit.witness("s") == ProjPoint((G(0), G(-1), G(1)), G)

    def test_expect_mismatch_is_violated(self, fixture_text):
        text = fixture_text("lemma1").replace(
            "expect point p (2 : 1 : 1)", "expect point p (3 : 1 : 1)")
        reports = run_document(parse_scenario(text))
        assert reports[0].verdict is Verdict.HOLDS
        assert reports[1].verdict is Verdict.VIOLATED
        assert reports[1].residual is not None
        assert not reports[1].residual.is_zero()
        assert exit_status(reports) == 1

    def test_expect_unknown_witness(self):
        text = MINIMAL + "expect point nope (1 : 0 : 0)\n"
        with pytest.raises(ScenarioParseError, match="no such witness"):
            run_document(parse_scenario(text))

    def test_expect_wrong_type(self):
        text = MINIMAL + "expect scalar y 4\n"
        with pytest.raises(ScenarioParseError, match="not a scalar"):
            run_document(parse_scenario(text))

    def test_expect_ratio_forms(self):
        assert parse_scenario(MINIMAL + "expect ratio cr -1\n").expects[0].value \
            == CrossRatioValue(-G.one(), G.one(), G)
        assert parse_scenario(MINIMAL + "expect ratio cr inf\n").expects[0].value \
            == CrossRatioValue.infinity(G)

    def test_degenerate_run_exits_2(self):
        text = """\
check damn
conic affine 1 1 0 0 0 -1
point a affine (-3/5, 4/5)
point b affine (3/5, 4/5)
point m affine (0, 4/5)
point r affine (0, 1)
point f affine (0, 1)
"""
        reports = run_document(parse_scenario(text))
        assert reports[0].verdict is Verdict.DEGENERATE
        assert exit_status(reports) == 2

    def test_underivable_partner(self):
        # m coincides with r, so the chord through both is not a line
        text = """\
check sack
conic affine 1 1 0 0 0 -1
point u affine (1, 0)
point v affine (-1, 0)
point m affine (0, 1)
point r affine (0, 1)
"""
        with pytest.raises(ScenarioParseError, match="cannot derive s"):
            run_document(parse_scenario(text))


def test_expect_equality_semantics():
    a = Expect("ratio", "cr", CrossRatioValue(-G.one(), G.one(), G))
    b = Expect("ratio", "cr", CrossRatioValue(G(2), -G(2), G))
    assert a == b
    assert a != Expect("ratio", "cr", CrossRatioValue.infinity(G))


def test_document_equality():
    doc = parse_scenario(MINIMAL)
    assert doc == parse_scenario(MINIMAL)
    assert doc != parse_scenario(MINIMAL.replace("(1 : 2 : 3)", "(1 : 2 : 5)"))
