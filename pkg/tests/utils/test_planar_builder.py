"""
Tests for sweep programs and braid closures.
"""
import pytest

from services.diagram import linking_matrix
from utils.planar_builder import birth, braid_closure, build, cross


class TestPlanarBuilder:
    """Tests for sweep programs."""

    def test_closure_components(self):
        """sigma_1 sigma_2 closes to one component, sigma_1^2 to two."""
        assert build(braid_closure([1, 2])).diagram.m == 1
        assert build(braid_closure([1, 1])).diagram.m == 2

    def test_hopf_closure_links_once(self):
        """The closure of sigma_1^-2 is the negative Hopf link."""
        d = build(braid_closure([-1, -1])).diagram
        assert linking_matrix(d)[0, 1] == -1

    def test_open_sweep_rejected(self):
        """A program that leaves strands open is refused."""
        with pytest.raises(ValueError):
            build([birth(0)] + [cross(0)])

    def test_singular_closure(self):
        """Listed word positions become double points."""
        d = build(braid_closure([1, 1, 1], singular=[1])).diagram
        assert d.singular_indices == [1]
