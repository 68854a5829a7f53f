"""
Tests for C_n-moves.
"""
import pytest

from services import corpus
from services.cn_move import cn_move, cn_move_inverse, site_face
from services.diagram import dart_arc, faces, linking_matrix
from services.errors import BadSite, UnsupportedN
from services.reduced import alphas
from services.skein import conway


def big_face_arcs(d):
    """Distinct arcs of the largest face, in face order."""
    arcs = []
    for dart in max(faces(d), key=len):
        if dart_arc(d, dart) not in arcs:
            arcs.append(dart_arc(d, dart))
    return arcs


class TestCnMove:
    """Tests for cn_move."""

    def test_c1_changes_crossings_only_locally(self):
        """A C_1-move bands in a Hopf clasp: two more crossings, same components."""
        d = corpus.torus(2, 5)
        move = cn_move(d, 1, big_face_arcs(d)[:2])
        assert move.diagram.m == 1
        assert move.diagram.n_crossings == d.n_crossings + 2

    def test_c2_keeps_linking(self):
        """A C_2-move (delta move) keeps every linking number."""
        d = corpus.torus(2, 6)
        move = cn_move(d, 2, big_face_arcs(d)[:3])
        assert move.diagram.m == 2
        assert linking_matrix(move.diagram).to_list() == linking_matrix(d).to_list()

    def test_c3_keeps_c1_of_knot(self):
        """c_1 of a knot has type 2, so a C_3-move cannot change it."""
        d = corpus.torus(2, 5)
        moved = cn_move(d, 3, big_face_arcs(d)[:4]).diagram
        assert moved.m == 1
        assert conway(moved, 2)[2] == conway(d, 2)[2]

    def test_site_face(self):
        """The face found for a site contains every site arc."""
        d = corpus.torus(2, 4)
        arcs = big_face_arcs(d)
        face = site_face(d, arcs[:2])
        assert set(arcs[:2]) <= {dart_arc(d, dart) for dart in face}

    def test_unsupported_n(self):
        """Only n in 1..4 is built."""
        d = corpus.torus(2, 7)
        with pytest.raises(UnsupportedN):
            cn_move(d, 5, big_face_arcs(d)[:6])

    @pytest.mark.parametrize("site", [(1, 2), (1, 1, 2), (1, 2, 99)])
    def test_bad_sites(self, site):
        """Wrong count, repeated arcs and unknown labels raise BadSite."""
        with pytest.raises(BadSite):
            cn_move(corpus.torus(2, 4), 2, site)

    def test_arcs_not_on_one_face(self):
        """Two arcs that never share a face are rejected."""
        d = corpus.twist_knot(3)
        face_arcs = [{dart_arc(d, dart) for dart in face} for face in faces(d)]
        apart = [
            (a, b)
            for a in range(1, d.arc_count + 1)
            for b in range(a + 1, d.arc_count + 1)
            if not any({a, b} <= arcs for arcs in face_arcs)
        ]
        assert apart
        with pytest.raises(BadSite):
            site_face(d, apart[0])


class TestCnMoveInverse:
    """Tests for cutting a C_n-move back out."""

    @pytest.mark.parametrize("spec,n", [("torus:2,5", 1), ("trefoil", 2), ("torus:2,6", 2), ("torus:2,7", 3), ("torus:2,8", 4)])
    def test_restores_diagram(self, spec, n):
        """Cutting the bands and dropping the template gives the input back."""
        d = corpus.build_spec(spec)
        move = cn_move(d, n, big_face_arcs(d)[:n + 1])
        assert move.diagram != d
        restored = move.undo()
        assert restored == d
        assert cn_move_inverse(move) == restored

    def test_trefoil_invariants_come_back(self):
        """On the trefoil with n=2 the move changes the diagram and the inverse restores every invariant."""
        d = corpus.trefoil()
        move = cn_move(d, 2, big_face_arcs(d)[:3])
        restored = move.undo()
        assert restored.n_crossings == d.n_crossings < move.diagram.n_crossings
        assert conway(restored) == conway(d)
        assert linking_matrix(restored).to_list() == linking_matrix(d).to_list()
        assert alphas(restored, 3) == alphas(d, 3)

    def test_inverse_of_link_move(self):
        """Linking matrix and the c_0 coefficient survive a move and its inverse on a 2-component link."""
        d = corpus.torus(2, 4)
        move = cn_move(d, 1, big_face_arcs(d)[:2])
        restored = move.undo()
        assert linking_matrix(restored).to_list() == linking_matrix(d).to_list()
        assert conway(restored) == conway(d)
        assert move.template == tuple(range(d.n_crossings, move.diagram.n_crossings))
