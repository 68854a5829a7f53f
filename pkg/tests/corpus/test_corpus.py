"""
Tests for the named corpus diagrams and the registry.
"""
import pytest

from services import corpus
from services.diagram import delete_components, face_touching, linking_matrix, parse_pd, serialize
from services.errors import ConstraintViolated, ParamOutOfRange, UnknownName
from services.reduced import sato_levine
from services.skein import conway
from utils.polynomial import IntPolynomial


class TestFamilies:
    """Tests for the individual builders."""

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_whitehead_unlinked(self, n):
        """W_n has two components with linking number 0."""
        d = corpus.whitehead(n)
        assert d.m == 2
        assert linking_matrix(d)[0, 1] == 0

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_milnor_unlinked(self, n):
        """M_n has two components with linking number 0."""
        d = corpus.milnor(n)
        assert d.m == 2
        assert linking_matrix(d)[0, 1] == 0

    def test_whitehead_sato_levine(self):
        """The Whitehead link has Sato-Levine invariant +-1."""
        assert abs(sato_levine(corpus.whitehead(1))) == 1

    def test_whitehead_two_conway_vanishes(self):
        """Iterated Whitehead doubles from n=2 on have polynomial 0."""
        assert conway(corpus.whitehead(2)).is_zero()

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_brunnian(self, k):
        """Brunnian chains are pairwise unlinked (k >= 3) and have a face touching all components."""
        d = corpus.brunnian(k)
        assert d.m == k
        assert face_touching(d, range(k)) is not None
        if k >= 3:
            assert linking_matrix(d).total() == 0

    def test_brunnian_proper_sublinks_trivial(self):
        """Dropping any one component of brunnian(3) leaves an unlink."""
        d = corpus.brunnian(3)
        for dropped in range(3):
            keep = [i for i in range(3) if i != dropped]
            assert conway(delete_components(d, keep)).is_zero()

    @pytest.mark.parametrize("n", [-2, -1, 0, 1, 2, 3])
    def test_twist_knot(self, n):
        """Twist knots have |c_1| = |n|."""
        d = corpus.twist_knot(n)
        assert d.m == 1
        assert abs(conway(d)[2]) == abs(n)

    def test_negative_torus_is_mirror(self):
        """T(2,-3) has the same even polynomial as T(2,3)."""
        assert conway(corpus.torus(2, -3)) == conway(corpus.trefoil())

    def test_ctype2_family_shape(self):
        """The witness family has two components and three self double points."""
        d = corpus.ctype2_family(1, 2, -3, 0)
        assert d.m == 2
        assert len(d.singular_indices) == 3
        assert all(d.is_self_crossing(x) for x in d.singular_indices)

    def test_ctype2_constraint(self):
        """Parameters off a + b + c + 2d = 0 are refused."""
        with pytest.raises(ConstraintViolated):
            corpus.ctype2_family(1, 1, 1, 0)

    @pytest.mark.parametrize("spec", [
        "milnor:1", "milnor:2", "milnor:3", "milnor:4",
        "twist_knot:-2", "twist_knot:-1", "twist_knot:1", "twist_knot:2", "twist_knot:3",
        "whitehead:1", "whitehead:2", "whitehead:3", "brunnian:2", "brunnian:4",
        "torus:2,-5", "ctype2:1,2,-3,0",
    ])
    def test_pd_round_trip(self, spec):
        """Serialized builder output, kinks included, parses back with the same invariants."""
        d = corpus.build_spec(spec)
        again = parse_pd(serialize(d))
        assert again.m == d.m
        assert again.n_crossings == d.n_crossings
        assert linking_matrix(again).to_list() == linking_matrix(d).to_list()
        if not d.is_singular:
            assert conway(again) == conway(d)

    def test_builder_output_realizable(self):
        """Every builder diagram parses back from its PD text."""
        for entry in corpus.list_entries():
            d = entry.diagram()
            assert parse_pd(serialize(d)).m == d.m


class TestRegistry:
    """Tests for name lookup and parameter parsing."""

    def test_parse_spec(self):
        """Specs split into a name and integer parameters."""
        assert corpus.parse_spec("hopf:+") == ("hopf", (1,))
        assert corpus.parse_spec("hopf:-") == ("hopf", (-1,))
        assert corpus.parse_spec("torus:2,5") == ("torus", (2, 5))
        assert corpus.parse_spec("trefoil") == ("trefoil", ())

    def test_hopf_default_sign(self):
        """hopf with no parameter is the positive Hopf link."""
        assert corpus.build_named("hopf") == corpus.hopf(1)

    def test_unknown_name(self):
        """Unknown names raise UnknownName."""
        with pytest.raises(UnknownName):
            corpus.build_spec("granny")

    def test_wrong_arity(self):
        """Builders check their parameter count."""
        with pytest.raises(ParamOutOfRange):
            corpus.build_named("torus", (2,))

    @pytest.mark.parametrize("spec", ["whitehead:7", "milnor:0", "unlink:0", "torus:3,5", "hopf:2"])
    def test_out_of_range(self, spec):
        """Parameters out of range raise ParamOutOfRange."""
        with pytest.raises(ParamOutOfRange):
            corpus.build_spec(spec)

    def test_bad_parameter_text(self):
        """Non-integer parameters are refused."""
        with pytest.raises(ParamOutOfRange):
            corpus.parse_spec("torus:2,x")

    def test_names(self):
        """Every builder is listed by name."""
        assert {"hopf", "whitehead", "milnor", "ctype2"} <= set(corpus.names())


class TestEntries:
    """Tests for the expectations attached to list_entries."""

    def test_expected_conway(self):
        """Entries that state a polynomial match the skein value."""
        for entry in corpus.list_entries():
            if "conway" in entry.expected:
                value, _ = entry.expected["conway"]
                assert str(conway(entry.diagram())) == value, entry.spec

    def test_expected_linking(self):
        """Entries with a linking expectation match the diagram."""
        for entry in corpus.list_entries():
            if "lk" in entry.expected:
                value, _ = entry.expected["lk"]
                assert linking_matrix(entry.diagram()).total() == value, entry.spec

    def test_expected_component_counts(self):
        """Entries with a component expectation match the diagram."""
        for entry in corpus.list_entries():
            if "m" in entry.expected:
                assert entry.diagram().m == entry.expected["m"][0]

    def test_spec_text(self):
        """An entry renders its spec and PD."""
        entry = corpus.CorpusEntry("torus", (2, 5))
        assert entry.spec == "torus:2,5"
        assert entry.pd == serialize(corpus.torus(2, 5))

    def test_unknot_is_free_loop(self):
        """The unknot is a single crossingless loop."""
        assert conway(corpus.unknot()) == IntPolynomial.one()
        assert corpus.unknot().n_crossings == 0
