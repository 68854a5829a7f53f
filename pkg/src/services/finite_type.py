"""
Finite Type Service
Extension of invariants to singular diagrams, vanishing probes and the Leibniz rule

v^x(L) is the alternating sum of v over all resolutions of the double points,
the sign being the product of the resolution signs.
"""

import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Callable, Literal, Optional, Sequence

from pydantic import BaseModel, Field
from tqdm import tqdm

from services.cn_move import cn_move
from services.config import get_leibniz_bound, get_workers, progress_enabled
from services.diagram import SingularLinkDiagram, linking_matrix, resolve, resolve_all, serialize
from services.errors import (
    BadSingularity,
    EvaluatorFailure,
    LinkEngineError,
    ParamOutOfRange,
    SamplerExhausted,
    UnknownName,
)
from services.skein import conway

logger = logging.getLogger(__name__)

Coloring = Literal["discrete", "constant"]


@dataclass
class Invariant:
    """An evaluatable link invariant with its claimed type bounds."""

    name: str
    evaluator: Callable[[SingularLinkDiagram], Any]
    claimed_type: Optional[int] = None
    claimed_colored_type: Optional[int] = None
    claimed_multitype: Optional[tuple[int, ...]] = None

    def __call__(self, d: SingularLinkDiagram):
        try:
            return self.evaluator(d)
        except LinkEngineError:
            raise
        except Exception as e:
            raise EvaluatorFailure(f"{self.name} failed: {e}") from e

    def __mul__(self, other: "Invariant") -> "Invariant":
        return Invariant(f"{self.name}*{other.name}", lambda d: self(d) * other(d))


class ProbeReport(BaseModel):
    """Outcome of a vanishing probe; `consistent` is evidence, never proof."""

    invariant: str
    n: int
    trials: int
    seed: Optional[int] = None
    verdict: Literal["consistent", "refuted"] = "consistent"
    witnesses: list[str] = Field(default_factory=list)
    witness_values: list[str] = Field(default_factory=list)

    def merge(self, other: "ProbeReport") -> "ProbeReport":
        refuted = self.verdict == "refuted" or other.verdict == "refuted"
        return ProbeReport(
            invariant=self.invariant,
            n=self.n,
            trials=self.trials + other.trials,
            seed=self.seed,
            verdict="refuted" if refuted else "consistent",
            witnesses=self.witnesses + other.witnesses,
            witness_values=self.witness_values + other.witness_values,
        )


# ============================================================================
# EXTENSION
# ============================================================================

def _accumulate(total, term):
    return term if total is None else total + term


def resolution_walk(d: SingularLinkDiagram) -> list[tuple[int, SingularLinkDiagram]]:
    """
    All 2^n resolutions with their signs, in Gray-code order.

    Consecutive entries differ at one double point, so each step is a single
    crossing switch.
    """
    nodes = d.singular_indices
    signs = [1] * len(nodes)
    current = resolve_all(d, {node: 1 for node in nodes})
    walk = [(1, current)]
    for step in range(1, 2 ** len(nodes)):
        flip = (step & -step).bit_length() - 1
        signs[flip] = -signs[flip]
        current = resolve(current, nodes[flip], signs[flip])
        weight = 1
        for s in signs:
            weight *= s
        walk.append((weight, current))
    return walk


def extend(v: Invariant, d: SingularLinkDiagram, workers: Optional[int] = None):
    """
    v^x(d): sum over resolutions eps of eps_1...eps_n * v(d_eps).

    With no double points this is v(d).
    """
    if not d.is_singular:
        return v(d)
    walk = resolution_walk(d)
    workers = workers or get_workers()
    if workers > 1 and len(walk) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(lambda item: v(item[1]), walk))
    else:
        values = [v(item[1]) for item in walk]
    total = None
    for (weight, _), value in zip(walk, values):
        total = _accumulate(total, value * weight)
    return total


def _is_nonzero(value) -> bool:
    return bool(value) if isinstance(value, int) else not value.is_zero()


def is_colored_self(d: SingularLinkDiagram, node: int, coloring: Coloring = "discrete") -> bool:
    """Double point joins two strands of the same color."""
    if coloring == "constant":
        return True
    first, second = d.crossing_components(node)
    return d.component_color(first) == d.component_color(second)


# ============================================================================
# PROBES
# ============================================================================

def _record(report: ProbeReport, v: Invariant, d: SingularLinkDiagram):
    value = extend(v, d)
    report.trials += 1
    if _is_nonzero(value):
        report.verdict = "refuted"
        report.witnesses.append(serialize(d))
        report.witness_values.append(str(value))


def _probe(
    v: Invariant,
    n: int,
    sampler: Callable[[], SingularLinkDiagram],
    trials: int,
    self_only: bool,
    coloring: Coloring,
    seed: Optional[int],
) -> ProbeReport:
    report = ProbeReport(invariant=v.name, n=n, trials=0, seed=seed)
    kind = "colored" if self_only else "uncolored"
    logger.info(f"{kind} probe of {v.name} at n={n}: {trials} trial(s)")
    for _ in tqdm(range(trials), desc=f"probe {v.name}", disable=not progress_enabled()):
        d = sampler()
        nodes = d.singular_indices
        if len(nodes) != n + 1:
            raise SamplerExhausted(f"sampler gave {len(nodes)} double points, expected {n + 1}")
        if self_only and not all(is_colored_self(d, x, coloring) for x in nodes):
            raise BadSingularity("sampled diagram has a double point between different colors")
        _record(report, v, d)
    logger.info(f"probe of {v.name} finished: {report.verdict}")
    return report


def colored_vanishing_probe(
    v: Invariant,
    n: int,
    sampler: Callable[[], SingularLinkDiagram],
    trials: int,
    coloring: Coloring = "discrete",
    seed: Optional[int] = None,
) -> ProbeReport:
    """Look for a singular diagram with n+1 self double points where v^x is nonzero."""
    return _probe(v, n, sampler, trials, True, coloring, seed)


def type_vanishing_probe(
    v: Invariant,
    n: int,
    sampler: Callable[[], SingularLinkDiagram],
    trials: int,
    seed: Optional[int] = None,
) -> ProbeReport:
    """Same as the colored probe with no restriction on the double points."""
    return _probe(v, n, sampler, trials, False, "constant", seed)


def multitype_vanishing_probe(
    v: Invariant,
    ks: Optional[Sequence[int]],
    sampler_for: Callable[[int], Callable[[], SingularLinkDiagram]],
    trials: int,
    seed: Optional[int] = None,
) -> ProbeReport:
    """
    Probe type (k_1, ..., k_m): for each component i, v^x must vanish on
    diagrams with k_i + 1 self double points, all on component i.

    Args:
        v: invariant under test
        ks: per-component bounds, v.claimed_multitype when None
        sampler_for: component index -> sampler of such diagrams
        trials: trials per component
    """
    ks = tuple(ks) if ks is not None else v.claimed_multitype
    if ks is None:
        raise ParamOutOfRange(f"{v.name} has no claimed multitype; give the bounds")
    if any(k < 0 for k in ks):
        raise ParamOutOfRange(f"multitype bounds must be non-negative, got {list(ks)}")
    report = ProbeReport(invariant=v.name, n=sum(ks), trials=0, seed=seed)
    logger.info(f"multitype probe of {v.name} at {list(ks)}: {trials} trial(s) per component")
    for component, k in enumerate(ks):
        sampler = sampler_for(component)
        for _ in tqdm(range(trials), desc=f"probe {v.name} [{component}]", disable=not progress_enabled()):
            d = sampler()
            if d.m != len(ks):
                raise ParamOutOfRange(f"{len(ks)} bounds for a {d.m}-component diagram")
            nodes = d.singular_indices
            if len(nodes) != k + 1:
                raise SamplerExhausted(f"sampler gave {len(nodes)} double points, expected {k + 1}")
            if any(d.crossing_components(x) != (component, component) for x in nodes):
                raise BadSingularity(f"sampled double point is not a self-crossing of component {component}")
            _record(report, v, d)
    logger.info(f"multitype probe of {v.name} finished: {report.verdict}")
    return report


# ============================================================================
# LEIBNIZ RULE AND C_n INVARIANCE
# ============================================================================

def leibniz_sides(u: Invariant, v: Invariant, d: SingularLinkDiagram, bound: Optional[int] = None):
    """
    Both sides of the product rule:
    (uv)^x(d) and the sum over splittings S + T of the double points of
    u^x(d, T resolved +) * v^x(d, S resolved -).
    """
    bound = get_leibniz_bound() if bound is None else bound
    nodes = d.singular_indices
    if len(nodes) > bound:
        raise ParamOutOfRange(f"{len(nodes)} double points exceed the bound {bound}")
    left = extend(u * v, d)
    right = None
    for size in range(len(nodes) + 1):
        for chosen in combinations(nodes, size):
            rest = [x for x in nodes if x not in chosen]
            u_part = extend(u, resolve_all(d, {x: 1 for x in rest}))
            v_part = extend(v, resolve_all(d, {x: -1 for x in chosen}))
            right = _accumulate(right, u_part * v_part)
    return left, right


def leibniz_check(u: Invariant, v: Invariant, d: SingularLinkDiagram, bound: Optional[int] = None) -> bool:
    left, right = leibniz_sides(u, v, d, bound)
    return left == right


def cn_invariance_check(v: Invariant, n: int, d: SingularLinkDiagram, site: Sequence[int]) -> bool:
    """v(d) == v(d after a C_(n+1)-move at the site)."""
    if v.claimed_type is not None and v.claimed_type > n:
        raise ParamOutOfRange(f"{v.name} claims type {v.claimed_type} > {n}")
    moved = cn_move(d, n + 1, site)
    before, after = v(d), v(moved.diagram)
    logger.info(f"C_{n + 1} check of {v.name}: {before} -> {after}")
    return before == after


# ============================================================================
# STANDARD INVARIANTS
# ============================================================================

def total_linking(d: SingularLinkDiagram) -> int:
    if d.m < 2:
        return 0
    return linking_matrix(d).total()


def conway_coefficient(d: SingularLinkDiagram, shift: int) -> int:
    """Coefficient of z^(m-1+shift) in the Conway polynomial."""
    degree = d.m - 1 + shift
    return conway(d, max_degree=degree)[degree]


_PATTERN = re.compile(r"^(c|z|alpha)(\d+)$")


def registry_names() -> list[str]:
    return ["lk", "c<k>", "z<j>", "alpha<k>", "sato_levine", "gamma"]


def standard_invariant(name: str, m: Optional[int] = None, truncation: Optional[int] = None) -> Invariant:
    """
    Look up an invariant by name.

    Args:
        name: lk, c<k>, z<j>, alpha<k>, sato_levine or gamma
        m: component count, used only for the claimed type bounds
        truncation: series order for reduced invariants
    """
    from services import reduced

    invariant = _lookup(name, m, reduced)
    if invariant.claimed_colored_type is not None and m is not None:
        # colored type n implies type (n, ..., n)
        invariant.claimed_multitype = (invariant.claimed_colored_type,) * m
    return invariant


def _lookup(name: str, m: Optional[int], reduced) -> Invariant:
    if name == "lk":
        return Invariant("lk", total_linking, claimed_type=1, claimed_colored_type=0)
    if name == "sato_levine":
        return Invariant("sato_levine", reduced.sato_levine, claimed_type=3, claimed_colored_type=1)
    if name == "gamma":
        return Invariant("gamma", reduced.gamma3, claimed_type=4)
    match = _PATTERN.match(name)
    if not match:
        raise UnknownName(f"unknown invariant {name!r}; known: {', '.join(registry_names())}")
    family, k = match.group(1), int(match.group(2))
    if family == "c":
        return Invariant(
            name,
            lambda d: conway_coefficient(d, 2 * k),
            claimed_type=None if m is None else m - 1 + 2 * k,
            claimed_colored_type=2 * k,
        )
    if family == "z":
        return Invariant(
            name,
            lambda d: conway_coefficient(d, k),
            claimed_type=None if m is None else m - 1 + k,
            claimed_colored_type=k,
        )
    return Invariant(
        name,
        lambda d: reduced.alpha(d, k),
        claimed_type=None if m is None else m - 1 + 2 * k,
        claimed_colored_type=2 * k - 1 if k > 0 else None,
    )
