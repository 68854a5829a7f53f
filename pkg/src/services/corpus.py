"""
Corpus Service
Deterministic builders for the named link families and the colored-type-2 witness family

Every diagram comes out of the planar sweep builder, so each PD code is
realizable. Names are given as "name" or "name:p1,p2" on the command line.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Optional, Sequence

from services.diagram import (
    SingularLinkDiagram,
    band_fuse,
    delete_components,
    face_touching,
    linking_matrix,
    resolve_all,
    serialize,
    smooth_all,
)
from services.errors import ConstraintViolated, InternalMismatch, ParamOutOfRange, UnknownName
from services.skein import c0_closed_form
from utils.planar_builder import (
    DOWN,
    LEFT,
    RIGHT,
    Event,
    Spot,
    birth,
    braid_closure,
    build,
    cross,
    death,
    double_component,
    spots_on,
)

logger = logging.getLogger(__name__)

# Parameter ranges
MAX_UNLINK = 8
MAX_WHITEHEAD = 6
MAX_MILNOR = 4
MAX_BRUNNIAN = 6
MAX_TORUS = 12
MAX_TWISTS = 6


def _in_range(name: str, value: int, low: int, high: int) -> int:
    if not low <= value <= high:
        raise ParamOutOfRange(f"{name} parameter {value} not in {low}..{high}")
    return value


# ============================================================================
# BRAID FAMILIES
# ============================================================================

def unknot() -> SingularLinkDiagram:
    return SingularLinkDiagram((), 1)


def unlink(m: int) -> SingularLinkDiagram:
    return SingularLinkDiagram((), _in_range("unlink", m, 1, MAX_UNLINK))


def hopf(sign: int = 1) -> SingularLinkDiagram:
    """Hopf link with linking number `sign`."""
    if sign not in (1, -1):
        raise ParamOutOfRange(f"hopf sign must be + or -, got {sign}")
    return build(braid_closure([sign, sign])).diagram


def torus(p: int, q: int) -> SingularLinkDiagram:
    """T(2, q) as the closure of sigma_1^q; negative q gives the mirror."""
    if p != 2:
        raise ParamOutOfRange("only 2-strand torus links are built")
    if q == 0 or abs(q) > MAX_TORUS:
        raise ParamOutOfRange(f"torus q={q} not in 1..{MAX_TORUS} up to sign")
    g = 1 if q > 0 else -1
    return build(braid_closure([g] * abs(q), strands=2)).diagram


def trefoil() -> SingularLinkDiagram:
    return torus(2, 3)


def figure8() -> SingularLinkDiagram:
    return build(braid_closure([1, -2, 1, -2])).diagram


def borromean() -> SingularLinkDiagram:
    return build(braid_closure([1, -2] * 3)).diagram


def twist_knot(n: int) -> SingularLinkDiagram:
    """Whitehead double of the unknot with n full twists; n=1 and n=-1 give the trefoil and figure-eight."""
    _in_range("twist_knot", n, -MAX_TWISTS, MAX_TWISTS)
    kink = braid_closure([1], strands=2)
    program, _ = double_component(kink, Spot(2, 0), clasps=[-1], twists=n)
    return build(program).diagram


# ============================================================================
# ITERATED DOUBLES
# ============================================================================

# before the first crossing of sigma_1^2, on the second braid strand
_HOPF_SPOT = Spot(2, 1)


def whitehead_program(n: int) -> list[Event]:
    program = braid_closure([1, 1])
    spot = _HOPF_SPOT
    for _ in range(n):
        program, spot = double_component(program, spot, clasps=[-1])
    return program


def whitehead(n: int) -> SingularLinkDiagram:
    """n-fold iterated untwisted left-handed Whitehead double of one Hopf component."""
    _in_range("whitehead", n, 1, MAX_WHITEHEAD)
    return build(whitehead_program(n)).diagram


@lru_cache(maxsize=None)
def _brunnian_program(k: int) -> tuple[tuple[Event, ...], Spot]:
    if k == 2:
        return tuple(braid_closure([1, 1])), _HOPF_SPOT
    previous, marker = _brunnian_program(k - 1)
    base = build(previous)
    target = base.component_at(marker.step, marker.position)
    candidates = [marker] + [s for s in spots_on(base, target) if s != marker]
    for spot in candidates:
        program, new_marker = double_component(previous, spot, clasps=[1, -1])
        diagram = build(program).diagram
        if face_touching(diagram, range(diagram.m)) is not None:
            logger.debug(f"brunnian({k}): doubled at {spot}, {diagram.n_crossings} crossings")
            return tuple(program), new_marker
    raise InternalMismatch(f"no doubling spot gives brunnian({k}) a face touching every component")


def brunnian(k: int) -> SingularLinkDiagram:
    """
    k-component Brunnian chain: the Hopf link for k=2, then one-branch
    iterated untwisted Bing doubles. Some face touches every component.
    """
    _in_range("brunnian", k, 2, MAX_BRUNNIAN)
    program, _ = _brunnian_program(k)
    return build(program).diagram


def milnor(n: int) -> SingularLinkDiagram:
    """Two-component link obtained by fusing all but one component of brunnian(n+2)."""
    _in_range("milnor", n, 1, MAX_MILNOR)
    d = brunnian(n + 2)
    kept = d.least_arc(0)
    while d.m > 2:
        home = d.component_of_arc(kept)
        others = [c for c in range(d.m) if c != home]
        pair = next(
            ((p, q) for p in others for q in others if p < q and face_touching(d, (p, q)) is not None),
            None,
        )
        if pair is None:
            raise InternalMismatch(f"milnor({n}): no two fusable components left")
        d, mapping = band_fuse(d, *pair)
        kept = mapping[kept]
    return d


# ============================================================================
# COLORED TYPE 2 WITNESS FAMILY
# ============================================================================

def _units(value: int, moves: Sequence[int]) -> list[Event]:
    over = RIGHT if value > 0 else LEFT
    return [cross(pos, over=over) for _ in range(abs(value)) for pos in moves]


def ctype2_program(a: int, b: int, c: int, d: int) -> list[Event]:
    """
    Doubled circle with three double points, plus an unknot K' hooking the
    region boundaries a, b, c, d times.

    Sweep after the births: [L, s0, s1, r1, r0, R] where L and R are K' and
    s/r are the descending and returning strands of the doubled circle.
    """
    program = [birth(0, DOWN), birth(1, DOWN), birth(2, DOWN)]
    program += _units(c, (4, 4))
    program += _units(d, (4, 3, 3, 4))
    program.append(cross(1, singular=True))
    program += _units(a, (0, 0))
    program.append(cross(1, singular=True))
    program += _units(b, (0, 0))
    program.append(cross(1, singular=True))
    program += [death(2), death(1), death(0)]
    return program


def ctype2_family(a: int, b: int, c: int, d: int, verify: bool = True) -> SingularLinkDiagram:
    """
    Two-component singular link: the doubled circle (three self double points)
    and K' with linking numbers a, b, c, d against the four region boundaries.

    With `verify`, the smoothed halves at each double point are checked to
    link once and c0 of the full smoothing against (a+b+c+d)d.
    """
    if a + b + c + 2 * d != 0:
        raise ConstraintViolated(f"a+b+c+2d must vanish, got {a + b + c + 2 * d}")
    result = build(ctype2_program(a, b, c, d))
    family = result.diagram
    if verify:
        kprime = result.component_at(1, 0)
        _verify_ctype2(family, family.m - 1 if kprime is None else kprime, (a, b, c, d))
    return family


def _verify_ctype2(family: SingularLinkDiagram, kprime: int, params: tuple[int, int, int, int]):
    a, b, c, d = params
    nodes = family.singular_indices
    if len(nodes) != 3 or family.m != 2:
        raise InternalMismatch(f"family has {len(nodes)} double points and {family.m} components")
    full, _ = smooth_all(family, nodes)
    c0 = c0_closed_form(full)
    if c0 != (a + b + c + d) * d:
        raise InternalMismatch(f"c0 of the full smoothing is {c0}, expected {(a + b + c + d) * d}")
    for x in nodes:
        resolved = resolve_all(family, {y: 1 for y in nodes if y != x})
        smoothed, arc_map = smooth_all(resolved, [x])
        other = _image(smoothed, family, arc_map, kprime)
        lobes = delete_components(smoothed, [i for i in range(smoothed.m) if i != other])
        if lobes.m != 2 or abs(linking_matrix(lobes)[0, 1]) != 1:
            raise InternalMismatch(f"smoothing double point {x} does not give halves linking once")
    logger.debug(f"ctype2 family {params} verified")


def _image(smoothed: SingularLinkDiagram, original: SingularLinkDiagram, arc_map: dict[int, int], comp: int) -> int:
    """Index in `smoothed` of an untouched component of `original`."""
    arc = original.least_arc(comp)
    if arc is None:
        return smoothed.m - 1
    return smoothed.component_of_arc(arc_map[arc])


# ============================================================================
# REGISTRY
# ============================================================================

@dataclass
class CorpusEntry:
    """A named diagram with expectations tagged by where they come from."""

    name: str
    params: tuple = ()
    expected: dict[str, tuple[Any, str]] = field(default_factory=dict)

    @property
    def spec(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}:{','.join(_format_param(p) for p in self.params)}"

    def diagram(self) -> SingularLinkDiagram:
        return build_named(self.name, self.params)

    @property
    def pd(self) -> str:
        return serialize(self.diagram())


def _format_param(p) -> str:
    return str(p)


_BUILDERS: dict[str, tuple[Callable[..., SingularLinkDiagram], int]] = {
    "unknot": (unknot, 0),
    "unlink": (unlink, 1),
    "hopf": (hopf, 1),
    "trefoil": (trefoil, 0),
    "figure8": (figure8, 0),
    "borromean": (borromean, 0),
    "whitehead": (whitehead, 1),
    "milnor": (milnor, 1),
    "brunnian": (brunnian, 1),
    "twist_knot": (twist_knot, 1),
    "torus": (torus, 2),
    "ctype2": (ctype2_family, 4),
}


def _parse_param(raw: str) -> int:
    raw = raw.strip()
    if raw in ("+", "-"):
        return 1 if raw == "+" else -1
    try:
        return int(raw)
    except ValueError:
        raise ParamOutOfRange(f"parameter {raw!r} is not an integer or sign")


def parse_spec(spec: str) -> tuple[str, tuple[int, ...]]:
    """'hopf:+' -> ('hopf', (1,)), 'torus:2,5' -> ('torus', (2, 5))."""
    name, _, rest = spec.strip().partition(":")
    params = tuple(_parse_param(p) for p in rest.split(",")) if rest.strip() else ()
    return name.strip(), params


def build_named(name: str, params: Sequence[int] = ()) -> SingularLinkDiagram:
    if name not in _BUILDERS:
        raise UnknownName(f"unknown corpus entry {name!r}; known: {', '.join(sorted(_BUILDERS))}")
    builder, arity = _BUILDERS[name]
    params = tuple(params)
    if name == "hopf" and not params:
        params = (1,)
    if len(params) != arity:
        raise ParamOutOfRange(f"{name} takes {arity} parameter(s), got {len(params)}")
    logger.info(f"building corpus entry {name}{list(params) if params else ''}")
    return builder(*params)


def build_spec(spec: str) -> SingularLinkDiagram:
    return build_named(*parse_spec(spec))


def names() -> list[str]:
    return sorted(_BUILDERS)


def list_entries() -> list[CorpusEntry]:
    """Standard entries. Tags: KNOWN (published value), DERIVED, TRIVIAL."""
    return [
        CorpusEntry("unknot", (), {"conway": ("1", "KNOWN"), "m": (1, "TRIVIAL")}),
        CorpusEntry("unlink", (2,), {"conway": ("0", "KNOWN"), "m": (2, "TRIVIAL")}),
        CorpusEntry("unlink", (3,), {"conway": ("0", "KNOWN"), "m": (3, "TRIVIAL")}),
        CorpusEntry("hopf", (1,), {"conway": ("z", "DERIVED"), "lk": (1, "DERIVED")}),
        CorpusEntry("hopf", (-1,), {"conway": ("-z", "DERIVED"), "lk": (-1, "DERIVED")}),
        CorpusEntry("trefoil", (), {"conway": ("1 + z^2", "DERIVED")}),
        CorpusEntry("figure8", (), {"conway": ("1 - z^2", "DERIVED")}),
        CorpusEntry("borromean", (), {"lk": (0, "DERIVED"), "m": (3, "TRIVIAL")}),
        CorpusEntry("whitehead", (1,), {"lk": (0, "KNOWN"), "abs_sato_levine": (1, "KNOWN")}),
        CorpusEntry("whitehead", (2,), {"lk": (0, "KNOWN"), "conway": ("0", "KNOWN")}),
        CorpusEntry("milnor", (1,), {"lk": (0, "KNOWN"), "m": (2, "TRIVIAL")}),
        CorpusEntry("milnor", (2,), {"lk": (0, "KNOWN"), "m": (2, "TRIVIAL")}),
        CorpusEntry("brunnian", (3,), {"lk": (0, "DERIVED"), "m": (3, "TRIVIAL")}),
        CorpusEntry("torus", (2, 5), {"conway": ("1 + 3*z^2 + z^4", "DERIVED")}),
        CorpusEntry("torus", (2, 4), {"conway": ("2*z + z^3", "DERIVED"), "lk": (2, "DERIVED")}),
    ]
