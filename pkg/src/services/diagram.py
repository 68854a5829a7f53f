"""
Diagram Service
PD-code model of singular link diagrams: parsing, validation and surgeries

Arc labels run 1..arc_count. A crossing lists its four arcs counterclockwise
starting from the incoming under-arc (for a double point, the incoming arc of
the strand designated first). The second strand enters at slot `over_in`
(1 or 3) and leaves at the opposite slot. A classical crossing is positive
exactly when its over strand runs from slot 3 to slot 1.
"""

from __future__ import annotations

import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import networkx as nx

from services.errors import (
    BadSite,
    BrokenCycle,
    DuplicateArcUse,
    EmptyInput,
    EmptyKeepSet,
    IndexOutOfRange,
    MalformedTerm,
    NoSuchCrossing,
    OrientationConflict,
    SingularBoundary,
    SingularMixedCrossing,
)

logger = logging.getLogger(__name__)

POSITIVE = "+"
NEGATIVE = "-"
SINGULAR = "s"

SignLike = Union[int, str]


def _kind_for_sign(sign: int) -> str:
    return POSITIVE if sign > 0 else NEGATIVE


def normalize_sign(sign: SignLike) -> int:
    """Accept +1/-1/0 or '+', '-', '0'."""
    if isinstance(sign, str):
        table = {"+": 1, "-": -1, "0": 0, "−": -1}
        if sign not in table:
            raise ValueError(f"unknown resolution sign {sign!r}")
        return table[sign]
    if sign not in (-1, 0, 1):
        raise ValueError(f"unknown resolution sign {sign!r}")
    return sign


# ============================================================================
# CROSSINGS
# ============================================================================

@dataclass(frozen=True)
class Crossing:
    """One crossing or rigid double point."""

    kind: str
    slots: tuple[int, int, int, int]
    over_in: int = 3

    def __post_init__(self):
        if self.kind not in (POSITIVE, NEGATIVE, SINGULAR):
            raise ValueError(f"bad crossing kind {self.kind!r}")
        if self.over_in not in (1, 3):
            raise ValueError(f"over_in must be 1 or 3, got {self.over_in}")
        if self.kind == POSITIVE and self.over_in != 3:
            raise ValueError("positive crossing needs the over strand entering at slot 3")
        if self.kind == NEGATIVE and self.over_in != 1:
            raise ValueError("negative crossing needs the over strand entering at slot 1")
        object.__setattr__(self, "slots", tuple(int(s) for s in self.slots))

    @property
    def is_singular(self) -> bool:
        return self.kind == SINGULAR

    @property
    def sign(self) -> int:
        """+1/-1 for classical crossings, 0 for a double point."""
        if self.kind == SINGULAR:
            return 0
        return 1 if self.kind == POSITIVE else -1

    @property
    def geometric_sign(self) -> int:
        """Sign the crossing would have with the first strand passing under."""
        return 1 if self.over_in == 3 else -1

    @property
    def over_out(self) -> int:
        return 4 - self.over_in

    @property
    def in_slots(self) -> tuple[int, int]:
        return (0, self.over_in)

    @property
    def out_slots(self) -> tuple[int, int]:
        return (2, self.over_out)

    def out_slot_for(self, in_slot: int) -> int:
        """Slot where the strand entering at `in_slot` leaves."""
        return 2 if in_slot == 0 else self.over_out

    def switched(self) -> "Crossing":
        """Crossing change: the over strand becomes the under strand."""
        a, b, c, d = self.slots
        new_kind = SINGULAR if self.is_singular else (NEGATIVE if self.kind == POSITIVE else POSITIVE)
        if self.over_in == 3:
            return Crossing(new_kind, (d, a, b, c), 1)
        return Crossing(new_kind, (b, c, d, a), 3)

    def resolved(self, sign: int) -> "Crossing":
        """Classical crossing of the requested sign occupying the same spot."""
        if self.is_singular:
            base = Crossing(_kind_for_sign(self.geometric_sign), self.slots, self.over_in)
        else:
            base = self
        return base if base.sign == sign else base.switched()

    def smoothing_pairs(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Arc pairs joined by the oriented smoothing: (in, out) across strands."""
        s = self.slots
        return (s[0], s[self.over_out]), (s[self.over_in], s[2])

    def mirrored(self) -> "Crossing":
        if not self.is_singular:
            return self.switched()
        flipped = self.resolved(self.geometric_sign).switched()
        return Crossing(SINGULAR, flipped.slots, flipped.over_in)

    def relabeled(self, mapping: dict[int, int]) -> "Crossing":
        return Crossing(self.kind, tuple(mapping[s] for s in self.slots), self.over_in)

    def to_pd(self) -> str:
        a, b, c, d = self.slots
        return f"X{self.kind}({a},{b},{c},{d})"


# ============================================================================
# PARTITION AND LINKING MATRIX
# ============================================================================

@dataclass(frozen=True)
class ComponentPartition:
    """Arc cycles in canonical order; crossingless components come last."""

    cycles: tuple[tuple[int, ...], ...]
    free_loops: int = 0

    @property
    def m(self) -> int:
        return len(self.cycles) + self.free_loops

    @property
    def components(self) -> list[tuple[int, ...]]:
        return list(self.cycles) + [() for _ in range(self.free_loops)]


@dataclass(frozen=True)
class LinkingMatrix:
    entries: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def to_list(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def pairs(self) -> dict[tuple[int, int], int]:
        return {(i, j): self.entries[i][j] for i in range(self.m) for j in range(i + 1, self.m)}

    def total(self) -> int:
        return sum(self.pairs().values())


# ============================================================================
# DIAGRAM
# ============================================================================

@dataclass(frozen=True)
class SingularLinkDiagram:
    """Immutable oriented diagram; arc cycles are derived on construction."""

    crossings: tuple[Crossing, ...]
    free_loops: int = 0
    color: Optional[tuple[int, ...]] = None
    _heads: dict = field(default=None, init=False, repr=False, compare=False)
    _tails: dict = field(default=None, init=False, repr=False, compare=False)
    _partition: ComponentPartition = field(default=None, init=False, repr=False, compare=False)
    _arc_component: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        if self.free_loops < 0:
            raise ValueError("free_loops must be non-negative")
        if not self.crossings and self.free_loops == 0:
            raise EmptyInput("diagram has no crossings and no crossingless components")
        self._index_arcs()
        self._trace_components()
        if self.color is not None and len(self.color) != self.m:
            raise ValueError(f"color map has {len(self.color)} entries for {self.m} components")

    def _index_arcs(self):
        counts = Counter(label for c in self.crossings for label in c.slots)
        n = 2 * len(self.crossings)
        if set(counts) != set(range(1, n + 1)) or any(v != 2 for v in counts.values()):
            bad = sorted(k for k, v in counts.items() if v != 2) or sorted(set(range(1, n + 1)) - set(counts))
            raise DuplicateArcUse(f"arc labels must be 1..{n}, each used twice; offending: {bad[:6]}")
        heads: dict[int, tuple[int, int]] = {}
        tails: dict[int, tuple[int, int]] = {}
        for i, c in enumerate(self.crossings):
            for s in c.in_slots:
                if c.slots[s] in heads:
                    raise BrokenCycle(f"arc {c.slots[s]} enters two crossings")
                heads[c.slots[s]] = (i, s)
            for s in c.out_slots:
                if c.slots[s] in tails:
                    raise BrokenCycle(f"arc {c.slots[s]} leaves two crossings")
                tails[c.slots[s]] = (i, s)
        object.__setattr__(self, "_heads", heads)
        object.__setattr__(self, "_tails", tails)

    def _trace_components(self):
        seen: set[int] = set()
        cycles = []
        arc_component: dict[int, int] = {}
        for start in range(1, self.arc_count + 1):
            if start in seen:
                continue
            cycle = []
            arc = start
            while arc not in seen:
                seen.add(arc)
                arc_component[arc] = len(cycles)
                cycle.append(arc)
                arc = self.successor(arc)
            if arc != start:
                raise BrokenCycle(f"arc successor walk from {start} does not close")
            cycles.append(tuple(cycle))
        object.__setattr__(self, "_partition", ComponentPartition(tuple(cycles), self.free_loops))
        object.__setattr__(self, "_arc_component", arc_component)

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    @property
    def arc_count(self) -> int:
        return 2 * len(self.crossings)

    @property
    def partition(self) -> ComponentPartition:
        return self._partition

    @property
    def m(self) -> int:
        return self._partition.m

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def singular_indices(self) -> list[int]:
        return [i for i, c in enumerate(self.crossings) if c.is_singular]

    @property
    def is_singular(self) -> bool:
        return any(c.is_singular for c in self.crossings)

    def successor(self, arc: int) -> int:
        i, s = self._heads[arc]
        c = self.crossings[i]
        return c.slots[c.out_slot_for(s)]

    def head(self, arc: int) -> tuple[int, int]:
        """(crossing, slot) where the arc ends."""
        return self._heads[arc]

    def tail(self, arc: int) -> tuple[int, int]:
        """(crossing, slot) where the arc starts."""
        return self._tails[arc]

    def component_of_arc(self, arc: int) -> int:
        return self._arc_component[arc]

    def least_arc(self, component: int) -> Optional[int]:
        cycles = self._partition.cycles
        return cycles[component][0] if component < len(cycles) else None

    def crossing_components(self, index: int) -> tuple[int, int]:
        """(first/under strand component, second/over strand component)."""
        c = self.crossings[index]
        return self._arc_component[c.slots[0]], self._arc_component[c.slots[c.over_in]]

    def is_self_crossing(self, index: int) -> bool:
        first, second = self.crossing_components(index)
        return first == second

    def component_color(self, component: int) -> int:
        return self.color[component] if self.color is not None else component

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def key(self) -> str:
        """Canonical string for memoization; records double-point strand direction."""
        extra = "".join(f"@{i}:{c.over_in}" for i, c in enumerate(self.crossings) if c.is_singular)
        return serialize(self) + extra

    def __str__(self) -> str:
        return serialize(self)


# ============================================================================
# REBUILD AFTER SURGERY
# ============================================================================

class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def rebuild(
    crossings: Sequence[Crossing],
    merges: Iterable[tuple[int, int]] = (),
    drop: Iterable[int] = (),
    free_loops: int = 0,
    label_colors: Optional[dict[int, int]] = None,
    free_loop_colors: Sequence[int] = (),
) -> tuple[SingularLinkDiagram, dict[int, int]]:
    """
    Assemble a diagram from raw crossings and arc identifications.

    Arc classes left without any crossing become crossingless components;
    classes touching a dropped label vanish. Labels are renumbered gap-free by
    ascending least raw label.

    Returns:
        (diagram, raw label -> new label for surviving arcs)
    """
    uf = _UnionFind()
    for c in crossings:
        for s in c.slots:
            uf.find(s)
    for a, b in merges:
        uf.union(a, b)
    dropped_roots = {uf.find(x) for x in drop}

    members: dict[int, list[int]] = {}
    for label in list(uf.parent):
        members.setdefault(uf.find(label), []).append(label)
    used_roots = {uf.find(s) for c in crossings for s in c.slots}

    new_loops = free_loops
    loop_colors = list(free_loop_colors)
    for root, labels in sorted(members.items()):
        if root in used_roots or root in dropped_roots:
            continue
        new_loops += 1
        if label_colors is not None:
            loop_colors.append(min(label_colors[x] for x in labels if x in label_colors))

    ordered_roots = sorted(used_roots)
    root_label = {root: k + 1 for k, root in enumerate(ordered_roots)}
    mapping = {x: root_label[uf.find(x)] for x in uf.parent if uf.find(x) in root_label}
    new_crossings = tuple(c.relabeled(mapping) for c in crossings)

    color = None
    if label_colors is not None:
        draft = SingularLinkDiagram(new_crossings, new_loops)
        arc_color: dict[int, int] = {}
        for raw, new in mapping.items():
            if raw in label_colors:
                arc_color[new] = min(arc_color.get(new, label_colors[raw]), label_colors[raw])
        comp_colors = [min(arc_color[a] for a in cyc if a in arc_color) for cyc in draft.partition.cycles]
        color = tuple(comp_colors + loop_colors)
    diagram = SingularLinkDiagram(new_crossings, new_loops, color)
    return diagram, mapping


def _label_colors(d: SingularLinkDiagram) -> Optional[dict[int, int]]:
    if d.color is None:
        return None
    return {arc: d.color[d.component_of_arc(arc)] for arc in range(1, d.arc_count + 1)}


def _free_loop_colors(d: SingularLinkDiagram) -> list[int]:
    if d.color is None:
        return []
    start = len(d.partition.cycles)
    return list(d.color[start:])


# ============================================================================
# PARSING AND SERIALIZATION
# ============================================================================

_TERM = re.compile(
    r"X(?P<kind>[+\-s])\(\s*(?P<a>\d+)\s*,\s*(?P<b>\d+)\s*,\s*(?P<c>\d+)\s*,\s*(?P<d>\d+)\s*\)"
    r"|O\(\s*(?P<loops>\d+)\s*\)"
)
_SEPARATOR = re.compile(r"[\s,;]*")


def _tokenize(text: str) -> tuple[list[tuple[str, tuple[int, int, int, int]]], int]:
    raw: list[tuple[str, tuple[int, int, int, int]]] = []
    loops = 0
    pos = _SEPARATOR.match(text, 0).end()
    while pos < len(text):
        match = _TERM.match(text, pos)
        if not match:
            snippet = text[pos:pos + 20]
            raise MalformedTerm(f"cannot parse PD term at {snippet!r}")
        if match.group("loops") is not None:
            loops += int(match.group("loops"))
        else:
            slots = tuple(int(match.group(k)) for k in "abcd")
            if min(slots) < 1:
                raise MalformedTerm("arc labels must be positive integers")
            raw.append((match.group("kind"), slots))
        pos = _SEPARATOR.match(text, match.end()).end()
    return raw, loops


def _orient(raw: list[tuple[str, tuple[int, int, int, int]]]) -> tuple[list[int], int]:
    """
    Decide where each second strand enters, and the rotation frame.

    Under slots fix the direction of every arc they touch; directions then
    spread along arcs and across over strands. Components that only ever pass
    over are oriented so that their first crossing's tag holds.

    Returns:
        (over_in per crossing in the input rotation, frame: +1 counterclockwise, -1 mirrored)
    """
    occurrences: dict[int, list[tuple[int, int]]] = {}
    for i, (_, slots) in enumerate(raw):
        for s, label in enumerate(slots):
            occurrences.setdefault(label, []).append((i, s))
    role: dict[tuple[int, int], str] = {}
    pending: list[tuple[int, int]] = []

    def assign(occ: tuple[int, int], value: str):
        if occ in role:
            if role[occ] != value:
                raise BrokenCycle(f"arc {raw[occ[0]][1][occ[1]]} cannot be oriented consistently")
            return
        role[occ] = value
        pending.append(occ)

    def propagate():
        while pending:
            i, s = pending.pop()
            other = "out" if role[(i, s)] == "in" else "in"
            label = raw[i][1][s]
            for occ in occurrences[label]:
                if occ != (i, s):
                    assign(occ, other)
            if s in (1, 3):
                assign((i, 4 - s), other)

    for i in range(len(raw)):
        assign((i, 0), "in")
        assign((i, 2), "out")
    propagate()

    def tag(i: int) -> int:
        return {POSITIVE: 1, NEGATIVE: -1}.get(raw[i][0], 0)

    def geo(i: int) -> int:
        return 1 if role[(i, 3)] == "in" else -1

    frame = 0
    for i in range(len(raw)):
        if tag(i) and (i, 3) in role:
            frame = tag(i) * geo(i)
            break
    frame = frame or 1

    for i in range(len(raw)):
        if (i, 3) in role:
            continue
        wanted = tag(i) * frame if tag(i) else frame
        assign((i, 3), "in" if wanted > 0 else "out")
        propagate()

    for i in range(len(raw)):
        if tag(i) and tag(i) * geo(i) != frame:
            raise OrientationConflict(f"crossing {i} tag {raw[i][0]} contradicts the diagram rotation")
    return [3 if role[(i, 3)] == "in" else 1 for i in range(len(raw))], frame


def parse_pd(text: str, strict: bool = True) -> SingularLinkDiagram:
    """
    Parse PD notation such as "X+(1,3,2,4) X+(3,1,4,2)" or "O(2)".

    Args:
        text: sequence of X+(..), X-(..), Xs(..) and O(k) terms
        strict: reject a crossing made of two one-arc loops, such as X+(1,1,2,2)

    Returns:
        Validated diagram with canonical labels and component order
    """
    if text is None or not text.strip():
        raise EmptyInput("empty PD text")
    raw, loops = _tokenize(text)
    if not raw and loops == 0:
        raise EmptyInput("no crossings and no O(k) term")

    counts = Counter(label for _, slots in raw for label in slots)
    bad = sorted(label for label, n in counts.items() if n != 2)
    if bad:
        raise DuplicateArcUse(f"arc labels must occur exactly twice; offending: {bad[:6]}")
    if strict:
        for kind, slots in raw:
            if len(set(slots)) <= 2:
                raise DuplicateArcUse(f"crossing X{kind}{slots} is two loops on two arcs")

    over_in, frame = _orient(raw)
    crossings = []
    for (kind, (a, b, c, d)), oi in zip(raw, over_in):
        if frame < 0:
            a, b, c, d = a, d, c, b
            oi = 4 - oi
        crossings.append(Crossing(kind, (a, b, c, d), oi))
    if frame < 0:
        logger.info("PD rotation read as clockwise; normalized to counterclockwise")

    relabel = {label: k + 1 for k, label in enumerate(sorted(counts))}
    crossings = [c.relabeled(relabel) for c in crossings]
    return SingularLinkDiagram(tuple(crossings), loops)


def serialize(d: SingularLinkDiagram) -> str:
    """Crossings in stored order, O(k) last."""
    terms = [c.to_pd() for c in d.crossings]
    if d.free_loops:
        terms.append(f"O({d.free_loops})")
    return " ".join(terms)


# ============================================================================
# SURGERIES
# ============================================================================

def _check_index(d: SingularLinkDiagram, node: int):
    if not 0 <= node < d.n_crossings:
        raise NoSuchCrossing(f"crossing {node} not in 0..{d.n_crossings - 1}")


def resolve_with_map(d: SingularLinkDiagram, node: int, sign: SignLike) -> tuple[SingularLinkDiagram, dict[int, int]]:
    """resolve() that also reports the old -> new arc label map."""
    _check_index(d, node)
    sign = normalize_sign(sign)
    if sign:
        crossings = list(d.crossings)
        crossings[node] = crossings[node].resolved(sign)
        identity = {a: a for a in range(1, d.arc_count + 1)}
        return SingularLinkDiagram(tuple(crossings), d.free_loops, d.color), identity
    target = d.crossings[node]
    rest = [c for i, c in enumerate(d.crossings) if i != node]
    return rebuild(
        rest,
        merges=target.smoothing_pairs(),
        free_loops=d.free_loops,
        label_colors=_label_colors(d),
        free_loop_colors=_free_loop_colors(d),
    )


def resolve(d: SingularLinkDiagram, node: int, sign: SignLike) -> SingularLinkDiagram:
    """
    Positive/negative resolution or oriented smoothing at one crossing.

    For a classical crossing a sign means switch-to-that-sign, so resolving to
    the sign it already has returns the same diagram.
    """
    return resolve_with_map(d, node, sign)[0]


def switch(d: SingularLinkDiagram, node: int) -> SingularLinkDiagram:
    _check_index(d, node)
    crossings = list(d.crossings)
    crossings[node] = crossings[node].switched()
    return SingularLinkDiagram(tuple(crossings), d.free_loops, d.color)


def resolve_all(d: SingularLinkDiagram, signs: dict[int, int]) -> SingularLinkDiagram:
    """Apply several non-zero resolutions at once (labels are untouched)."""
    crossings = list(d.crossings)
    for node, sign in signs.items():
        _check_index(d, node)
        crossings[node] = crossings[node].resolved(normalize_sign(sign))
    return SingularLinkDiagram(tuple(crossings), d.free_loops, d.color)


def smooth_all(d: SingularLinkDiagram, nodes: Iterable[int]) -> tuple[SingularLinkDiagram, dict[int, int]]:
    """Smooth several crossings at once."""
    nodes = set(nodes)
    for node in nodes:
        _check_index(d, node)
    merges = [pair for i in sorted(nodes) for pair in d.crossings[i].smoothing_pairs()]
    rest = [c for i, c in enumerate(d.crossings) if i not in nodes]
    return rebuild(
        rest,
        merges=merges,
        free_loops=d.free_loops,
        label_colors=_label_colors(d),
        free_loop_colors=_free_loop_colors(d),
    )


def linking_matrix(d: SingularLinkDiagram) -> LinkingMatrix:
    """Half the signed count of mixed crossings for every component pair."""
    m = d.m
    doubled = [[0] * m for _ in range(m)]
    for i, c in enumerate(d.crossings):
        first, second = d.crossing_components(i)
        if first == second:
            continue
        if c.is_singular:
            raise SingularMixedCrossing(f"crossing {i} is a double point between components {first} and {second}")
        doubled[first][second] += c.sign
        doubled[second][first] += c.sign
    for row in doubled:
        for value in row:
            if value % 2:
                raise OrientationConflict("odd signed count of mixed crossings; diagram is not planar")
    return LinkingMatrix(tuple(tuple(v // 2 for v in row) for row in doubled))


def delete_components_with_map(
    d: SingularLinkDiagram, keep: Iterable[int]
) -> tuple[SingularLinkDiagram, dict[int, int]]:
    keep = set(keep)
    if not keep:
        raise EmptyKeepSet("keep set is empty")
    for k in keep:
        if not 0 <= k < d.m:
            raise IndexOutOfRange(f"component {k} not in 0..{d.m - 1}")

    crossings: list[Crossing] = []
    merges: list[tuple[int, int]] = []
    for i, c in enumerate(d.crossings):
        first, second = d.crossing_components(i)
        if first in keep and second in keep:
            crossings.append(c)
        elif first in keep or second in keep:
            if c.is_singular:
                raise SingularBoundary(f"double point {i} joins a kept and a deleted component")
            in_slot = 0 if first in keep else c.over_in
            merges.append((c.slots[in_slot], c.slots[c.out_slot_for(in_slot)]))
    drop = [a for a in range(1, d.arc_count + 1) if d.component_of_arc(a) not in keep]

    n_cycles = len(d.partition.cycles)
    kept_loops = sorted(k for k in keep if k >= n_cycles)
    loop_colors = [d.color[k] for k in kept_loops] if d.color is not None else []
    return rebuild(
        crossings,
        merges=merges,
        drop=drop,
        free_loops=len(kept_loops),
        label_colors=_label_colors(d),
        free_loop_colors=loop_colors,
    )


def delete_components(d: SingularLinkDiagram, keep: Iterable[int]) -> SingularLinkDiagram:
    """Sublink on the kept components; kept strands are spliced through removed crossings."""
    return delete_components_with_map(d, keep)[0]


def _offset(d: SingularLinkDiagram, by: int) -> list[Crossing]:
    return [c.relabeled({s: s + by for s in c.slots}) for c in d.crossings]


def _union_colors(d1: SingularLinkDiagram, d2: SingularLinkDiagram, offset: int):
    if d1.color is None and d2.color is None:
        return None, []
    lc1 = _label_colors(d1) or {a: d1.component_of_arc(a) for a in range(1, d1.arc_count + 1)}
    lc2 = _label_colors(d2) or {a: d2.component_of_arc(a) for a in range(1, d2.arc_count + 1)}
    shift = max(d1.color or range(d1.m)) + 1
    labels = dict(lc1)
    labels.update({a + offset: col + shift for a, col in lc2.items()})
    loops = list(_free_loop_colors(d1) or [d1.m - d1.free_loops + k for k in range(d1.free_loops)])
    loops += [col + shift for col in (_free_loop_colors(d2) or range(d2.m - d2.free_loops, d2.m))]
    return labels, loops


def disjoint_union(d1: SingularLinkDiagram, d2: SingularLinkDiagram) -> SingularLinkDiagram:
    offset = d1.arc_count
    labels, loops = _union_colors(d1, d2, offset)
    diagram, _ = rebuild(
        list(d1.crossings) + _offset(d2, offset),
        free_loops=d1.free_loops + d2.free_loops,
        label_colors=labels,
        free_loop_colors=loops,
    )
    return diagram


def splice(crossings: list[Crossing], x: int, y: int) -> list[Crossing]:
    """
    Band-join arcs x and y without new crossings: x keeps its tail and takes
    y's head, y keeps its tail and takes x's head.
    """
    out = []
    for c in crossings:
        slots = list(c.slots)
        for s in c.in_slots:
            if slots[s] == x:
                slots[s] = y
            elif slots[s] == y:
                slots[s] = x
        out.append(Crossing(c.kind, tuple(slots), c.over_in))
    return out


def connected_sum(d1: SingularLinkDiagram, i: int, d2: SingularLinkDiagram, j: int) -> SingularLinkDiagram:
    """L #_{i,j} L' spliced at the least-labeled arc of each chosen component."""
    if not 0 <= i < d1.m:
        raise IndexOutOfRange(f"component {i} not in 0..{d1.m - 1}")
    if not 0 <= j < d2.m:
        raise IndexOutOfRange(f"component {j} not in 0..{d2.m - 1}")
    x = d1.least_arc(i)
    y = d2.least_arc(j)
    if y is None:
        return _drop_free_loop(d1, d2, j, keep_first=True)
    if x is None:
        return _drop_free_loop(d2, d1, i, keep_first=False)
    offset = d1.arc_count
    crossings = splice(list(d1.crossings) + _offset(d2, offset), x, y + offset)
    labels, loops = _union_colors(d1, d2, offset)
    if labels is not None:
        for a in range(1, d2.arc_count + 1):
            if d2.component_of_arc(a) == j:
                labels[a + offset] = labels[x]
    diagram, _ = rebuild(
        crossings,
        free_loops=d1.free_loops + d2.free_loops,
        label_colors=labels,
        free_loop_colors=loops,
    )
    logger.debug(f"connected sum: {d1.m} + {d2.m} - 1 components")
    return diagram


def _drop_free_loop(kept: SingularLinkDiagram, other: SingularLinkDiagram, loop: int, keep_first: bool):
    """Connected sum along a crossingless component absorbs it."""
    remaining = [k for k in range(other.m) if k != loop]
    if not remaining:
        return kept
    trimmed = delete_components(other, remaining)
    return disjoint_union(kept, trimmed) if keep_first else disjoint_union(trimmed, kept)


def is_diagrammatically_split(d: SingularLinkDiagram) -> bool:
    """True iff the crossing-incidence graph over components is disconnected."""
    if d.m <= 1:
        return False
    graph = nx.Graph()
    graph.add_nodes_from(range(d.m))
    for i in range(d.n_crossings):
        first, second = d.crossing_components(i)
        if first != second:
            graph.add_edge(first, second)
    return not nx.is_connected(graph)


def mirror(d: SingularLinkDiagram) -> SingularLinkDiagram:
    return SingularLinkDiagram(tuple(c.mirrored() for c in d.crossings), d.free_loops, d.color)


def reverse_components(d: SingularLinkDiagram, components: Iterable[int]) -> SingularLinkDiagram:
    """Reverse the orientation of the chosen components."""
    flip = set(components)
    crossings = []
    for i, c in enumerate(d.crossings):
        first, second = d.crossing_components(i)
        slots, over_in = c.slots, c.over_in
        if first in flip:
            a, b, cc, dd = slots
            slots, over_in = (cc, dd, a, b), 4 - over_in
        if second in flip:
            over_in = 4 - over_in
        kind = SINGULAR if c.is_singular else _kind_for_sign(1 if over_in == 3 else -1)
        crossings.append(Crossing(kind, slots, over_in))
    diagram, _ = rebuild(crossings, free_loops=d.free_loops, label_colors=_label_colors(d),
                         free_loop_colors=_free_loop_colors(d))
    return diagram


def faces(d: SingularLinkDiagram) -> list[list[tuple[int, int]]]:
    """
    Faces of the diagram as cyclic lists of darts (crossing, slot).

    Each dart stands for the arc at that slot, walked away from the crossing
    with the face on the right.
    """
    other_end: dict[tuple[int, int], tuple[int, int]] = {}
    for arc in range(1, d.arc_count + 1):
        h, t = d.head(arc), d.tail(arc)
        other_end[h] = t
        other_end[t] = h
    seen: set[tuple[int, int]] = set()
    result = []
    for i in range(d.n_crossings):
        for s in range(4):
            if (i, s) in seen:
                continue
            face = []
            dart = (i, s)
            while dart not in seen:
                seen.add(dart)
                face.append(dart)
                j, t = other_end[dart]
                dart = (j, (t + 1) % 4)
            result.append(face)
    return result


def dart_arc(d: SingularLinkDiagram, dart: tuple[int, int]) -> int:
    return d.crossings[dart[0]].slots[dart[1]]


def dart_follows_orientation(d: SingularLinkDiagram, dart: tuple[int, int]) -> bool:
    return d.tail(dart_arc(d, dart)) == dart


def face_components(d: SingularLinkDiagram, face: Sequence[tuple[int, int]]) -> set[int]:
    return {d.component_of_arc(dart_arc(d, dart)) for dart in face}


def face_touching(d: SingularLinkDiagram, components: Iterable[int]) -> Optional[list[tuple[int, int]]]:
    """First face whose boundary meets every listed component, or None."""
    wanted = set(components)
    for face in faces(d):
        if wanted <= face_components(d, face):
            return face
    return None


def first_darts_by_component(d: SingularLinkDiagram, face: Sequence[tuple[int, int]]) -> dict[int, tuple[int, int]]:
    """First dart of each component met along the face, in traversal order."""
    found: dict[int, tuple[int, int]] = {}
    for dart in face:
        found.setdefault(d.component_of_arc(dart_arc(d, dart)), dart)
    return found


def band_fuse(d: SingularLinkDiagram, first: int, second: int) -> tuple[SingularLinkDiagram, dict[int, int]]:
    """
    Fuse two components by a band inside a face they share.

    The second component is reversed when needed so the band is oriented.

    Returns:
        (diagram, old label -> new label)
    """
    face = face_touching(d, (first, second))
    if face is None:
        raise BadSite(f"components {first} and {second} share no face")
    darts = first_darts_by_component(d, face)
    x_dart, y_dart = darts[first], darts[second]
    x, y = dart_arc(d, x_dart), dart_arc(d, y_dart)
    if dart_follows_orientation(d, x_dart) != dart_follows_orientation(d, y_dart):
        d = reverse_components(d, [second])
    return rebuild(
        splice(list(d.crossings), x, y),
        free_loops=d.free_loops,
        label_colors=_label_colors(d),
        free_loop_colors=_free_loop_colors(d),
    )
