"""
Seeded property tests for the Conway polynomial at full sample size.
"""
from itertools import combinations

import pytest

from services import corpus
from services.diagram import connected_sum, disjoint_union, is_diagrammatically_split, linking_matrix, resolve
from services.finite_type import Invariant, extend
from services.sampler import BraidSampler
from services.skein import c0_closed_form, conway, conway_singular
from utils.polynomial import Z

SKEIN_SEEDS = range(100)
C0_SEEDS = range(25)

PRODUCT_SPECS = ["hopf:+", "hopf:-", "trefoil", "figure8", "torus:2,4", "torus:2,-5", "twist_knot:2"]
# 21 pairs, the first 20 are used
PRODUCT_PAIRS = list(combinations(PRODUCT_SPECS, 2))[:20]

SHAPE_SPECS = [
    "unknot", "unlink:2", "hopf:+", "hopf:-", "trefoil", "figure8", "torus:2,4", "torus:2,6",
    "twist_knot:-2", "whitehead:1", "whitehead:2", "milnor:1", "milnor:2", "brunnian:3", "borromean",
]


def assert_conway_shape(d):
    """Divisible by z^(m-1), every exponent m-1 plus an even number."""
    p = conway(d)
    if p.is_zero():
        return
    assert p.low_degree >= d.m - 1
    assert all((e - (d.m - 1)) % 2 == 0 for e in p.exponents())


class TestSkeinIdentity:
    """Tests for the skein relation on random diagrams."""

    @pytest.mark.parametrize("seed", SKEIN_SEEDS)
    def test_every_crossing(self, seed):
        """p(L+) - p(L-) = z p(L0) exactly at every crossing of a diagram with at most 8 crossings."""
        d = BraidSampler(seed=seed, length=(1, 8)).sample()
        assert d.n_crossings <= 8
        for x in range(d.n_crossings):
            left = conway(resolve(d, x, 1)) - conway(resolve(d, x, -1))
            assert left == Z * conway(resolve(d, x, 0))


class TestShapeAndSplit:
    """Tests for the shape of the polynomial and for split vanishing."""

    @pytest.mark.parametrize("spec", SHAPE_SPECS)
    def test_corpus_shape(self, spec):
        """Corpus polynomials start at z^(m-1) and keep its parity."""
        assert_conway_shape(corpus.build_spec(spec))

    @pytest.mark.parametrize("seed", SKEIN_SEEDS)
    def test_random_shape(self, seed):
        """Random closures have the same shape, and vanish when split."""
        d = BraidSampler(seed=seed, strands=(2, 5), length=(1, 8)).sample()
        assert_conway_shape(d)
        if is_diagrammatically_split(d):
            assert conway(d).is_zero()

    @pytest.mark.parametrize("seed", range(20))
    def test_disjoint_union_vanishes(self, seed):
        """A split diagram built from two random pieces has polynomial 0."""
        first, second = BraidSampler(seed=seed, length=(1, 6)).take(2)
        d = disjoint_union(first, second)
        assert is_diagrammatically_split(d)
        assert conway(d).is_zero()


class TestC0ClosedForms:
    """Tests for the determinant and spanning-tree forms of c0 on random links."""

    def check(self, d):
        c0 = conway(d, d.m - 1)[d.m - 1]
        determinants = {c0_closed_form(d, "determinant", p) for p in range(d.m)}
        assert determinants == {c0}
        assert c0_closed_form(d, "trees") == c0
        return c0

    @pytest.mark.parametrize("seed", C0_SEEDS)
    def test_two_components(self, seed):
        """For m=2 every form equals the linking number."""
        d = BraidSampler(seed=seed, components=2, length=(2, 8)).sample()
        assert self.check(d) == linking_matrix(d)[0, 1]

    @pytest.mark.parametrize("seed", C0_SEEDS)
    def test_three_components(self, seed):
        """For m=3 every form equals ab + bc + ca over the three linking numbers."""
        d = BraidSampler(seed=seed, components=3, strands=(3, 4), length=(3, 8)).sample()
        lk = linking_matrix(d)
        a, b, c = lk[0, 1], lk[1, 2], lk[0, 2]
        assert self.check(d) == a * b + b * c + c * a


class TestMultiplicativity:
    """Tests for connected sums of corpus diagrams."""

    @pytest.mark.parametrize("first,second", PRODUCT_PAIRS)
    def test_connected_sum(self, first, second):
        """conway(L # L') = conway(L) conway(L') along the last and first components."""
        d1, d2 = corpus.build_spec(first), corpus.build_spec(second)
        summed = connected_sum(d1, d1.m - 1, d2, 0)
        assert summed.m == d1.m + d2.m - 1
        assert conway(summed) == conway(d1) * conway(d2)


class TestSingularCoherence:
    """Tests for the two evaluation paths of the singular extension."""

    @pytest.mark.parametrize("seed", range(50))
    def test_paths_agree(self, seed):
        """Resolution sum equals z^k times the smoothing for k = 1..3 double points."""
        k = seed % 3 + 1
        d = BraidSampler(seed=seed, double_points=k, length=(k, 8)).sample()
        assert len(d.singular_indices) == k
        value = conway_singular(d)
        assert value == extend(Invariant("conway", conway), d)
        assert value.is_zero() or value.low_degree >= k
