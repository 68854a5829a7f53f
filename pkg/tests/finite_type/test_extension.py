"""
Tests for singular extensions, vanishing probes and the Leibniz rule.
"""
from itertools import product

import pytest

from services import corpus
from services.diagram import dart_arc, faces, parse_pd, resolve_all
from services.errors import (
    BadSingularity,
    EvaluatorFailure,
    ParamOutOfRange,
    SamplerExhausted,
    UnknownName,
    WrongComponentCount,
)
from services.finite_type import (
    Invariant,
    ProbeReport,
    cn_invariance_check,
    colored_vanishing_probe,
    extend,
    is_colored_self,
    leibniz_check,
    leibniz_sides,
    multitype_vanishing_probe,
    resolution_walk,
    standard_invariant,
    total_linking,
    type_vanishing_probe,
)
from services.sampler import BraidSampler, fixed_sampler
from services.skein import conway_singular

MIXED_DOUBLE_POINT = "Xs(1,3,2,4) X+(3,1,4,2)"
TREFOIL_ONE_DOUBLE = "Xs(1,5,2,4) X+(3,1,4,6) X+(5,3,6,2)"
TREFOIL_TWO_DOUBLE = "Xs(1,5,2,4) Xs(3,1,4,6) X+(5,3,6,2)"


def direct_sum(v, d):
    """Reference extension straight from the definition."""
    nodes = d.singular_indices
    total = 0
    for signs in product((1, -1), repeat=len(nodes)):
        weight = 1
        for s in signs:
            weight *= s
        total += weight * v(resolve_all(d, dict(zip(nodes, signs))))
    return total


def face_site(d, size):
    """First `size` distinct arcs of the first face that has that many."""
    for face in faces(d):
        arcs = []
        for dart in face:
            arc = dart_arc(d, dart)
            if arc not in arcs:
                arcs.append(arc)
        if len(arcs) >= size:
            return arcs[:size]
    raise AssertionError(f"no face with {size} distinct arcs")


class TestExtend:
    """Tests for extend and resolution_walk."""

    def test_nonsingular_is_plain_value(self, hopf):
        """Without double points the extension is v itself."""
        assert extend(standard_invariant("lk"), hopf) == 1

    def test_lk_mixed_double_point(self):
        """lk jumps by one across a mixed double point."""
        assert extend(standard_invariant("lk"), parse_pd(MIXED_DOUBLE_POINT)) == 1

    def test_lk_self_double_point(self):
        """lk does not see a self double point."""
        assert extend(standard_invariant("lk"), parse_pd(TREFOIL_ONE_DOUBLE)) == 0

    def test_c1_on_trefoil_double_point(self):
        """c_1(trefoil) - c_1(unknot) = 1."""
        assert extend(standard_invariant("c1", m=1), parse_pd(TREFOIL_ONE_DOUBLE)) == 1

    def test_walk_has_every_sign_pattern(self):
        """Gray walk visits 2^n resolutions with weights summing to 0."""
        walk = resolution_walk(parse_pd(TREFOIL_TWO_DOUBLE))
        assert len(walk) == 4
        assert sum(weight for weight, _ in walk) == 0
        assert all(not d.is_singular for _, d in walk)

    def test_walk_order_does_not_matter(self):
        """Gray-order evaluation equals the plain sum over sign vectors."""
        d = parse_pd(TREFOIL_TWO_DOUBLE)
        v = standard_invariant("z2", m=1)
        assert extend(v, d) == direct_sum(v, d) == 1

    def test_polynomial_values(self):
        """Extending the whole polynomial agrees with conway_singular."""
        d = parse_pd(TREFOIL_TWO_DOUBLE)
        v = Invariant("conway", conway_singular)
        assert extend(v, d) == conway_singular(d)

    def test_workers_agree(self):
        """A thread pool gives the same value as the serial loop."""
        d = parse_pd(TREFOIL_TWO_DOUBLE)
        v = standard_invariant("c1", m=1)
        assert extend(v, d, workers=3) == extend(v, d, workers=1)


class TestInvariantRegistry:
    """Tests for standard_invariant and Invariant."""

    def test_claimed_types(self):
        """Claimed bounds depend on the component count."""
        assert standard_invariant("lk").claimed_type == 1
        assert standard_invariant("c1", m=2).claimed_type == 3
        assert standard_invariant("alpha2", m=2).claimed_colored_type == 3
        assert standard_invariant("z3", m=1).claimed_type == 3

    def test_unknown_name(self):
        """Unknown names raise UnknownName."""
        with pytest.raises(UnknownName):
            standard_invariant("jones")

    def test_evaluator_failure_wrapped(self, hopf):
        """Unexpected exceptions become EvaluatorFailure."""
        boom = Invariant("boom", lambda d: 1 // 0)
        with pytest.raises(EvaluatorFailure):
            boom(hopf)

    def test_engine_errors_pass_through(self, trefoil):
        """Engine errors keep their own type."""
        with pytest.raises(WrongComponentCount):
            standard_invariant("sato_levine")(trefoil)

    def test_product(self, hopf):
        """The product of two invariants evaluates pointwise."""
        square = standard_invariant("lk") * standard_invariant("lk")
        assert square.name == "lk*lk"
        assert square(hopf) == 1

    def test_total_linking_of_knot(self, trefoil):
        """A knot has total linking number 0."""
        assert total_linking(trefoil) == 0


class TestLeibniz:
    """Tests for the product rule of extensions."""

    def test_single_double_point(self):
        """lk * lk on one mixed double point."""
        lk = standard_invariant("lk")
        assert leibniz_check(lk, lk, parse_pd(MIXED_DOUBLE_POINT))

    def test_sampled_links(self):
        """Both sides agree on random 2-component links with two double points."""
        lk, c0 = standard_invariant("lk"), standard_invariant("c0", m=2)
        sampler = BraidSampler(seed=5, components=2, double_points=2, length=(2, 6))
        for d in sampler.take(4):
            left, right = leibniz_sides(lk, c0, d)
            assert left == right

    def test_knot_invariants(self):
        """c1 * c1 on the twice-singular trefoil."""
        c1 = standard_invariant("c1", m=1)
        assert leibniz_check(c1, c1, parse_pd(TREFOIL_TWO_DOUBLE))

    def test_bound(self):
        """More double points than the bound is refused."""
        lk = standard_invariant("lk")
        with pytest.raises(ParamOutOfRange):
            leibniz_check(lk, lk, parse_pd(TREFOIL_TWO_DOUBLE), bound=1)


class TestProbes:
    """Tests for the vanishing probes."""

    def test_lk_type_one(self):
        """lk^x vanishes with two arbitrary double points."""
        sampler = BraidSampler(seed=2, components=2, double_points=2, length=(2, 6))
        report = type_vanishing_probe(standard_invariant("lk"), 1, sampler, 5, seed=2)
        assert report.verdict == "consistent"
        assert report.trials == 5
        assert report.witnesses == []

    def test_c1_knots_type_two(self):
        """c_1 of knots vanishes with three double points."""
        sampler = BraidSampler(seed=9, components=1, double_points=3, length=(3, 7))
        report = type_vanishing_probe(standard_invariant("c1", m=1), 2, sampler, 3, seed=9)
        assert report.verdict == "consistent"

    def test_lk_not_type_zero(self):
        """A mixed double point refutes type 0 for lk."""
        d = parse_pd(MIXED_DOUBLE_POINT)
        report = type_vanishing_probe(standard_invariant("lk"), 0, fixed_sampler(d), 1)
        assert report.verdict == "refuted"
        assert report.witness_values == ["1"]
        assert report.witnesses == [str(d)]

    def test_lk_colored_type_zero(self):
        """lk^x vanishes at one self double point."""
        sampler = BraidSampler(seed=4, components=2, double_points=1, self_only=True, length=(2, 6))
        report = colored_vanishing_probe(standard_invariant("lk"), 0, sampler, 4)
        assert report.verdict == "consistent"

    def test_colored_probe_rejects_mixed(self):
        """Colored probes need self double points."""
        d = parse_pd(MIXED_DOUBLE_POINT)
        with pytest.raises(BadSingularity):
            colored_vanishing_probe(standard_invariant("lk"), 0, fixed_sampler(d), 1)

    def test_wrong_double_point_count(self):
        """A sampler with too few double points is reported."""
        d = parse_pd(MIXED_DOUBLE_POINT)
        with pytest.raises(SamplerExhausted):
            type_vanishing_probe(standard_invariant("lk"), 1, fixed_sampler(d), 1)

    def test_constant_coloring(self):
        """Under the constant coloring every double point is self."""
        d = parse_pd(MIXED_DOUBLE_POINT)
        assert not is_colored_self(d, 0)
        assert is_colored_self(d, 0, coloring="constant")

    def test_report_merge(self):
        """Merged reports add trials and keep witnesses."""
        a = ProbeReport(invariant="lk", n=1, trials=3)
        b = ProbeReport(invariant="lk", n=1, trials=2, verdict="refuted", witnesses=["X"], witness_values=["1"])
        merged = a.merge(b)
        assert merged.trials == 5
        assert merged.verdict == "refuted"
        assert merged.witnesses == ["X"]


def self_sampler(seed, m, double_points):
    """component -> sampler with all double points on that component."""
    return lambda component: BraidSampler(
        seed=seed + component, components=m, double_points=double_points,
        on_component=component, length=(3, 8),
    )


class TestMultitype:
    """Tests for per-component type bounds."""

    def test_claimed_bounds_from_colored_type(self):
        """Colored type n gives the bound n on every component."""
        assert standard_invariant("lk", m=2).claimed_multitype == (0, 0)
        assert standard_invariant("c1", m=3).claimed_multitype == (2, 2, 2)
        assert standard_invariant("alpha1", m=2).claimed_multitype == (1, 1)
        assert standard_invariant("gamma", m=3).claimed_multitype is None
        assert standard_invariant("lk").claimed_multitype is None

    def test_lk_type_zero_zero(self):
        """lk^x vanishes on one self double point of either component."""
        v = standard_invariant("lk", m=2)
        report = multitype_vanishing_probe(v, None, self_sampler(5, 2, 1), 6, seed=5)
        assert report.verdict == "consistent"
        assert report.trials == 12
        assert report.n == 0

    def test_alpha1_type_one_one(self):
        """alpha_1 vanishes on two self double points of one component."""
        v = standard_invariant("alpha1", m=2)
        report = multitype_vanishing_probe(v, (1, 1), self_sampler(31, 2, 2), 5)
        assert report.verdict == "consistent"

    def test_knot_c1_not_type_zero(self):
        """The trefoil with one double point refutes type (0) for c_1."""
        d = parse_pd(TREFOIL_ONE_DOUBLE)
        report = multitype_vanishing_probe(standard_invariant("c1", m=1), (0,), lambda _: fixed_sampler(d), 1)
        assert report.verdict == "refuted"
        assert report.witness_values == ["1"]

    def test_mixed_double_point_rejected(self):
        """Bounds per component need self double points."""
        d = parse_pd(MIXED_DOUBLE_POINT)
        with pytest.raises(BadSingularity):
            multitype_vanishing_probe(standard_invariant("lk", m=2), None, lambda _: fixed_sampler(d), 1)

    def test_bound_count_must_match(self):
        """Three bounds for a two-component sample are rejected."""
        with pytest.raises(ParamOutOfRange):
            multitype_vanishing_probe(standard_invariant("lk"), (0, 0, 0), self_sampler(5, 2, 1), 1)

    def test_needs_bounds(self):
        """gamma has no colored type, so its bounds must be given."""
        with pytest.raises(ParamOutOfRange):
            multitype_vanishing_probe(standard_invariant("gamma"), None, self_sampler(5, 3, 1), 1)


class TestCnInvariance:
    """Tests for invariance under C_(n+1)-moves."""

    def test_lk_under_c2(self):
        """Linking number survives a C_2-move."""
        d = corpus.torus(2, 4)
        assert cn_invariance_check(standard_invariant("lk"), 1, d, face_site(d, 3))

    def test_c0_under_c3(self):
        """c_0 of a 2-component link survives a C_3-move."""
        d = corpus.torus(2, 6)
        assert cn_invariance_check(standard_invariant("c0", m=2), 2, d, face_site(d, 4))

    def test_knot_c1_under_c3(self):
        """c_1 of a knot has type 2 and survives a C_3-move."""
        d = corpus.torus(2, 5)
        assert cn_invariance_check(standard_invariant("c1", m=1), 2, d, face_site(d, 4))

    def test_type_too_high(self):
        """A check below the claimed type is refused."""
        d = corpus.torus(2, 5)
        with pytest.raises(ParamOutOfRange):
            cn_invariance_check(standard_invariant("c1", m=1), 1, d, face_site(d, 3))
