"""
C_n-move Service
Band sum of a diagram with a Brunnian template at n+1 arcs of one face

The template is the (n+1)-component Brunnian chain (the Hopf link for n=1).
Its components are joined to the site arcs by untwisted bands drawn inside
the shared face, so no crossings are added outside the template.
"""

import logging
from dataclasses import dataclass
from typing import Sequence

from services.corpus import brunnian
from services.diagram import (
    SingularLinkDiagram,
    dart_arc,
    dart_follows_orientation,
    face_touching,
    faces,
    first_darts_by_component,
    rebuild,
    reverse_components,
    splice,
)
from services.errors import BadSite, InternalMismatch, UnsupportedN

logger = logging.getLogger(__name__)

MAX_N = 4


@dataclass(frozen=True)
class CnMove:
    """
    One applied move.

    `bands` pairs each site arc with the template arc it was joined to, and
    `template` lists the crossings the move added, both in `diagram` labels.
    """

    diagram: SingularLinkDiagram
    n: int
    site: tuple[int, ...]
    bands: tuple[tuple[int, int], ...]
    template: tuple[int, ...]

    def undo(self) -> SingularLinkDiagram:
        return cn_move_inverse(self)


def site_face(d: SingularLinkDiagram, site: Sequence[int]) -> list[tuple[int, int]]:
    """First face whose boundary contains every site arc."""
    wanted = set(site)
    for face in faces(d):
        if wanted <= {dart_arc(d, dart) for dart in face}:
            return face
    raise BadSite(f"arcs {list(site)} do not lie on a common face")


def _template_darts(template: SingularLinkDiagram) -> list[tuple[int, int]]:
    face = face_touching(template, range(template.m))
    if face is None:
        raise InternalMismatch(f"template with {template.m} components has no face touching all of them")
    darts = first_darts_by_component(template, face)
    ordered = sorted(darts.values(), key=face.index)
    return list(reversed(ordered))


def cn_move(d: SingularLinkDiagram, n: int, site: Sequence[int]) -> CnMove:
    """
    Apply a C_n-move at the n+1 site arcs.

    Args:
        d: diagram to modify
        n: move order, 1..4
        site: n+1 distinct arc labels lying on one face

    Returns:
        CnMove holding the new diagram
    """
    if not 1 <= n <= MAX_N:
        raise UnsupportedN(f"C_n-moves are implemented for n in 1..{MAX_N}, got {n}")
    site = tuple(site)
    if len(site) != n + 1:
        raise BadSite(f"C_{n}-move needs {n + 1} arcs, got {len(site)}")
    if len(set(site)) != len(site):
        raise BadSite(f"site arcs {list(site)} are not distinct")
    for arc in site:
        if not 1 <= arc <= d.arc_count:
            raise BadSite(f"arc {arc} not in 1..{d.arc_count}")

    face = site_face(d, site)
    first_dart = {}
    for dart in face:
        first_dart.setdefault(dart_arc(d, dart), dart)
    site_darts = sorted((first_dart[a] for a in site), key=face.index)

    template = brunnian(n + 1)
    template_darts = _template_darts(template)
    flip = [
        template.component_of_arc(dart_arc(template, t_dart))
        for s_dart, t_dart in zip(site_darts, template_darts)
        if dart_follows_orientation(d, s_dart) != dart_follows_orientation(template, t_dart)
    ]
    pairs = [(dart_arc(d, s), dart_arc(template, t)) for s, t in zip(site_darts, template_darts)]
    if flip:
        template = reverse_components(template, flip)

    offset = d.arc_count
    crossings = list(d.crossings) + [c.relabeled({s: s + offset for s in c.slots}) for c in template.crossings]
    for x, y in pairs:
        crossings = splice(crossings, x, y + offset)
    moved, mapping = rebuild(crossings, free_loops=d.free_loops)
    logger.info(f"C_{n}-move at arcs {list(site)}: {d.n_crossings} -> {moved.n_crossings} crossings")
    bands = tuple((mapping[x], mapping[y + offset]) for x, y in pairs)
    added = tuple(range(d.n_crossings, moved.n_crossings))
    return CnMove(moved, n, site, bands, added)


def cn_move_inverse(move: CnMove) -> SingularLinkDiagram:
    """
    Undo a C_n-move: cut the bands and take the template tangle away.

    Splicing a band pair a second time swaps the heads back, after which the
    template crossings form a separate piece that is dropped.
    """
    d = move.diagram
    crossings = list(d.crossings)
    for x, y in move.bands:
        crossings = splice(crossings, x, y)
    dropped = set(move.template)
    template_arcs = {s for i in dropped for s in crossings[i].slots}
    kept = [c for i, c in enumerate(crossings) if i not in dropped]
    if any(s in template_arcs for c in kept for s in c.slots):
        raise InternalMismatch(f"C_{move.n}-move at {list(move.site)}: template still attached after cutting bands")
    restored, _ = rebuild(kept, free_loops=d.free_loops)
    logger.info(f"C_{move.n}-move undone: {d.n_crossings} -> {restored.n_crossings} crossings")
    return restored
