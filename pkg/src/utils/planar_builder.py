"""
Planar Builder
Top-to-bottom sweep construction of planar diagrams from birth/cross/death events

A sweep line carries oriented strand ends. `birth` opens a cap, `death` closes
a cup, `cross` swaps two neighbours. Because every event is planar, the
resulting PD codes are realizable by construction.
"""

import logging
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from services.diagram import SINGULAR, Crossing, SingularLinkDiagram, linking_matrix, rebuild

logger = logging.getLogger(__name__)

UP = "up"
DOWN = "down"
LEFT = "left"
RIGHT = "right"

# Counterclockwise order of the four ends around a sweep crossing
_CCW = ("TR", "TL", "BL", "BR")


def _flip(direction: str) -> str:
    return UP if direction == DOWN else DOWN


@dataclass(frozen=True)
class Event:
    op: str
    pos: int
    direction: str = DOWN
    sign: int = 0
    over: str = ""
    singular: bool = False


def birth(pos: int, direction: str = DOWN) -> Event:
    return Event("birth", pos, direction=direction)


def death(pos: int) -> Event:
    return Event("death", pos)


def cross(pos: int, sign: int = 0, over: str = "", singular: bool = False) -> Event:
    return Event("cross", pos, sign=sign, over=over, singular=singular)


# ============================================================================
# BUILDER
# ============================================================================

@dataclass
class BuildResult:
    diagram: SingularLinkDiagram
    labels: dict[int, int]
    snapshots: list[list[tuple[int, str]]]
    events: list[Event]

    def component_at(self, step: int, position: int) -> Optional[int]:
        """Component of the strand at `position` just before event `step`."""
        label = self.snapshots[step][position][0]
        arc = self.labels.get(label)
        return None if arc is None else self.diagram.component_of_arc(arc)


class PlanarBuilder:
    """Runs an event program and assembles the PD code."""

    def __init__(self):
        self.positions: list[tuple[int, str]] = []
        self.crossings: list[Crossing] = []
        self.merges: list[tuple[int, int]] = []
        self.events: list[Event] = []
        self.snapshots: list[list[tuple[int, str]]] = []
        self._next = 1

    def _fresh(self) -> int:
        label = self._next
        self._next += 1
        return label

    def _check(self, pos: int, width: int):
        if pos < 0 or pos + width > len(self.positions):
            raise ValueError(f"position {pos} outside sweep of width {len(self.positions)}")

    def apply(self, event: Event):
        self.snapshots.append(list(self.positions))
        if event.op == "birth":
            if not 0 <= event.pos <= len(self.positions):
                raise ValueError(f"birth at {event.pos} outside sweep")
            label = self._fresh()
            self.positions[event.pos:event.pos] = [(label, event.direction), (label, _flip(event.direction))]
            self.events.append(event)
        elif event.op == "death":
            self._check(event.pos, 2)
            (left, ldir), (right, rdir) = self.positions[event.pos:event.pos + 2]
            if ldir == rdir:
                raise ValueError(f"death at {event.pos} joins two strands running {ldir}")
            self.merges.append((left, right))
            del self.positions[event.pos:event.pos + 2]
            self.events.append(event)
        elif event.op == "cross":
            self._check(event.pos, 2)
            self.events.append(self._cross(event))
        else:
            raise ValueError(f"unknown event {event.op!r}")

    def _cross(self, event: Event) -> Event:
        i = event.pos
        (tl, tl_dir), (tr, tr_dir) = self.positions[i:i + 2]
        bl, br = self._fresh(), self._fresh()
        ends = {"TR": tr, "TL": tl, "BL": bl, "BR": br}
        # left strand runs TL-BR, right strand TR-BL
        incoming = {LEFT: "TL" if tl_dir == DOWN else "BR", RIGHT: "TR" if tr_dir == DOWN else "BL"}

        def layout(over: str) -> tuple[tuple[int, ...], int]:
            under = RIGHT if over == LEFT else LEFT
            k = _CCW.index(incoming[under])
            names = _CCW[k:] + _CCW[:k]
            return tuple(ends[n] for n in names), names.index(incoming[over])

        over = event.over or (LEFT if not event.singular else RIGHT)
        slots, over_in = layout(over)
        if event.sign and not event.singular:
            if (1 if over_in == 3 else -1) != event.sign:
                over = RIGHT if over == LEFT else LEFT
                slots, over_in = layout(over)
        geo = 1 if over_in == 3 else -1
        kind = SINGULAR if event.singular else ("+" if geo > 0 else "-")
        self.crossings.append(Crossing(kind, slots, over_in))
        self.positions[i:i + 2] = [(bl, tr_dir), (br, tl_dir)]
        return replace(event, over=over, sign=0 if event.singular else geo)

    def run(self, events: Sequence[Event]) -> "PlanarBuilder":
        for event in events:
            self.apply(event)
        return self

    def build(self) -> BuildResult:
        """Close the sweep; arcs are renumbered consecutively along each component."""
        if self.positions:
            raise ValueError(f"{len(self.positions)} strand ends left open")
        self.snapshots.append([])
        draft, raw_map = rebuild(self.crossings, merges=self.merges)
        along = {}
        for cycle in draft.partition.cycles:
            for arc in cycle:
                along[arc] = len(along) + 1
        diagram = SingularLinkDiagram(
            tuple(c.relabeled(along) for c in draft.crossings), draft.free_loops
        )
        labels = {raw: along[arc] for raw, arc in raw_map.items()}
        return BuildResult(diagram, labels, self.snapshots, self.events)


def build(events: Sequence[Event]) -> BuildResult:
    return PlanarBuilder().run(events).build()


# ============================================================================
# PROGRAMS
# ============================================================================

def braid_closure(word: Sequence[int], strands: Optional[int] = None, singular: Sequence[int] = ()) -> list[Event]:
    """
    Closure of a braid word; generator k > 0 is sigma_k, k < 0 its inverse.

    Entries listed in `singular` (indices into the word) become double points.
    """
    strands = strands or (max((abs(g) for g in word), default=0) + 1)
    events = [birth(i, DOWN) for i in range(strands)]
    for index, g in enumerate(word):
        if g == 0 or abs(g) >= strands:
            raise ValueError(f"generator {g} needs more than {strands} strands")
        events.append(cross(abs(g) - 1, sign=1 if g > 0 else -1, singular=index in singular))
    events.extend(death(i) for i in reversed(range(strands)))
    return events


def clasp(pos: int, sign: int) -> list[Event]:
    """Clasp on a band pair (up, down) at `pos`; both crossings get `sign`."""
    return [birth(pos + 1, UP), cross(pos, sign=sign), cross(pos + 2, sign=sign), death(pos + 1)]


def full_twists(pos: int, count: int) -> list[Event]:
    sign = 1 if count > 0 else -1
    return [cross(pos, sign=sign) for _ in range(2 * abs(count))]


@dataclass(frozen=True)
class Spot:
    """Sweep location: before event `step`, at sweep `position`."""

    step: int
    position: int


def _double(base: BuildResult, component: int, spot: Spot, clasps: Sequence[int], twists: int):
    def on_band(step: int, position: int) -> bool:
        return base.component_at(step, position) == component

    out: list[Event] = []
    marker: Optional[Spot] = None
    events = base.events
    for step in range(len(events) + 1):
        snap = base.snapshots[step]
        widths = [2 if on_band(step, p) else 1 for p in range(len(snap))]

        def at(p: int) -> int:
            return sum(widths[:p])

        if step == spot.step:
            j = at(spot.position)
            out.extend(full_twists(j, twists) if twists else [])
            for sign in clasps:
                out.extend(clasp(j, sign))
            marker = Spot(len(out), j)
        if step == len(events):
            break
        ev = events[step]
        if ev.op == "birth":
            j = at(ev.pos)
            if on_band(step + 1, ev.pos):
                out += [birth(j, UP), birth(j + 1, DOWN)]
            else:
                out.append(birth(j, ev.direction))
        elif ev.op == "death":
            j = at(ev.pos)
            if on_band(step, ev.pos):
                out += [death(j + 1), death(j)]
            else:
                out.append(death(j))
        else:
            j = at(ev.pos)
            left, right = on_band(step, ev.pos), on_band(step, ev.pos + 1)
            if ev.singular and (left or right):
                raise ValueError("cannot double a component through a double point")
            if left and right:
                order = (j + 1, j, j + 2, j + 1)
            elif left:
                order = (j + 1, j)
            elif right:
                order = (j, j + 1)
            else:
                order = (j,)
            out.extend(cross(k, over=ev.over, singular=ev.singular) for k in order)
    return out, marker


def double_component(
    events: Sequence[Event], spot: Spot, clasps: Sequence[int], twists: int = 0
) -> tuple[list[Event], Spot]:
    """
    Replace the component through `spot` by the boundary of a zero-framed band.

    One clasp gives a Whitehead double, two clasps of opposite sign a Bing
    double. `twists` extra full twists change the framing away from zero.
    Returns the new program and a spot on the strand leaving the last clasp.
    """
    base = build(events)
    component = base.component_at(spot.step, spot.position)
    if component is None:
        raise ValueError("spot does not lie on a component with crossings")

    plain, marker = _double(base, component, spot, (), 0)
    trial = build(plain)
    west = trial.component_at(marker.step, marker.position)
    east = trial.component_at(marker.step, marker.position + 1)
    framing = linking_matrix(trial.diagram)[west, east]
    program, marker = _double(base, component, spot, clasps, twists - framing)
    logger.debug(f"doubled component {component} with {len(clasps)} clasp(s), framing {framing}")
    return program, marker


def spots_on(result: BuildResult, component: int) -> list[Spot]:
    """Every sweep location where the component has a strand."""
    found = []
    for step in range(len(result.events)):
        for position in range(len(result.snapshots[step])):
            if result.component_at(step, position) == component:
                found.append(Spot(step, position))
    return found
