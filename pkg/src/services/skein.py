"""
Skein Service
Conway polynomial by the switch/smooth computation tree, and closed forms for c0

The tree walks every component from its least arc, components in canonical
order. The first crossing that is first met from below is switched and
smoothed; descending diagrams are unlinks.
"""

import logging
import threading
from collections import OrderedDict
from dataclasses import dataclass
from itertools import product
from typing import Literal, Optional

import networkx as nx
import sympy

from services.config import get_cache_size
from services.diagram import (
    SingularLinkDiagram,
    is_diagrammatically_split,
    linking_matrix,
    resolve,
    resolve_all,
    smooth_all,
    switch,
)
from services.errors import InternalMismatch, SingleComponent, SingularInput
from utils.polynomial import Z, IntPolynomial

logger = logging.getLogger(__name__)


@dataclass
class SkeinTrace:
    """Shape of one computation tree."""

    switches: int = 0
    smoothings: int = 0
    max_depth: int = 0
    cache_hits: int = 0
    pruned: int = 0

    def to_dict(self) -> dict:
        return {
            "switches": self.switches,
            "smoothings": self.smoothings,
            "max_depth": self.max_depth,
            "cache_hits": self.cache_hits,
            "pruned": self.pruned,
        }


class SkeinCache:
    """Bounded insert-only memo keyed by (canonical diagram, degree budget)."""

    def __init__(self, max_size: Optional[int] = None):
        self.max_size = get_cache_size() if max_size is None else max_size
        self._store: "OrderedDict[tuple[str, int], IntPolynomial]" = OrderedDict()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: tuple[str, int]) -> Optional[IntPolynomial]:
        with self._lock:
            value = self._store.get(key)
            if value is None:
                self.misses += 1
            else:
                self.hits += 1
                self._store.move_to_end(key)
            return value

    def put(self, key: tuple[str, int], value: IntPolynomial):
        if self.max_size <= 0:
            return
        with self._lock:
            if key in self._store:
                return
            self._store[key] = value
            if len(self._store) > self.max_size:
                self._store.popitem(last=False)

    def __len__(self) -> int:
        return len(self._store)

    def clear(self):
        with self._lock:
            self._store.clear()
            self.hits = self.misses = 0


_shared_cache: Optional[SkeinCache] = None


def shared_cache() -> SkeinCache:
    """Process-wide memo used when callers do not pass their own."""
    global _shared_cache
    if _shared_cache is None:
        _shared_cache = SkeinCache()
    return _shared_cache


# ============================================================================
# COMPUTATION TREE
# ============================================================================

def first_ascending_crossing(d: SingularLinkDiagram) -> Optional[int]:
    """First crossing met from below on its first visit, or None if descending."""
    visited: set[int] = set()
    for cycle in d.partition.cycles:
        for arc in cycle:
            index, slot = d.head(arc)
            if index in visited:
                continue
            visited.add(index)
            if slot == 0:
                return index
    return None


def _conway(d: SingularLinkDiagram, budget: int, cache: SkeinCache, trace: SkeinTrace, depth: int) -> IntPolynomial:
    trace.max_depth = max(trace.max_depth, depth)
    m = d.m
    # divisible by z^(m-1)
    if m - 1 > budget:
        trace.pruned += 1
        return IntPolynomial.zero()
    if d.n_crossings == 0:
        return IntPolynomial.one() if m == 1 else IntPolynomial.zero()

    key = (d.key(), budget)
    cached = cache.get(key)
    if cached is not None:
        trace.cache_hits += 1
        return cached

    if is_diagrammatically_split(d):
        result = IntPolynomial.zero()
    else:
        x = first_ascending_crossing(d)
        if x is None:
            result = IntPolynomial.one() if m == 1 else IntPolynomial.zero()
        else:
            eps = d.crossings[x].sign
            trace.switches += 1
            result = _conway(switch(d, x), budget, cache, trace, depth + 1)
            if budget >= 1:
                trace.smoothings += 1
                smoothed = _conway(resolve(d, x, 0), budget - 1, cache, trace, depth + 1)
                result = result + (Z * smoothed) * eps
            result = result.truncate(budget)
    cache.put(key, result)
    return result


def conway_with_trace(
    d: SingularLinkDiagram,
    max_degree: Optional[int] = None,
    cache: Optional[SkeinCache] = None,
) -> tuple[IntPolynomial, SkeinTrace]:
    """
    Conway polynomial of a non-singular diagram.

    Args:
        d: diagram without double points
        max_degree: keep only terms up to this degree (exact there); None for all
        cache: memo to use (the shared one by default)

    Returns:
        (polynomial, trace)
    """
    if d.is_singular:
        raise SingularInput(f"diagram has {len(d.singular_indices)} double point(s)")
    budget = d.n_crossings if max_degree is None else max_degree
    trace = SkeinTrace()
    poly = _conway(d, budget, cache if cache is not None else shared_cache(), trace, 0)
    logger.debug(f"conway: {d.n_crossings} crossings, budget {budget}, trace {trace.to_dict()}")
    return poly, trace


def conway(
    d: SingularLinkDiagram,
    max_degree: Optional[int] = None,
    cache: Optional[SkeinCache] = None,
) -> IntPolynomial:
    return conway_with_trace(d, max_degree, cache)[0]


def conway_singular(
    d: SingularLinkDiagram,
    max_degree: Optional[int] = None,
    cache: Optional[SkeinCache] = None,
) -> IntPolynomial:
    """
    Extension of the Conway polynomial to a singular diagram.

    The alternating sum over all resolutions is checked against z^k times the
    polynomial of the fully smoothed diagram.
    """
    nodes = d.singular_indices
    k = len(nodes)
    if k == 0:
        return conway(d, max_degree, cache)
    budget = d.n_crossings if max_degree is None else max_degree

    total = IntPolynomial.zero()
    for signs in product((1, -1), repeat=k):
        weight = 1
        for s in signs:
            weight *= s
        resolved = resolve_all(d, dict(zip(nodes, signs)))
        total = total + conway(resolved, budget, cache) * weight

    smoothed, _ = smooth_all(d, nodes)
    if budget >= k:
        via_smoothing = conway(smoothed, budget - k, cache).shift(k)
    else:
        via_smoothing = IntPolynomial.zero()
    if total != via_smoothing:
        raise InternalMismatch(
            f"resolution sum {total} differs from smoothing path {via_smoothing} "
            f"on {k} double point(s)"
        )
    return total


# ============================================================================
# CLOSED FORMS FOR c0
# ============================================================================

def laplacian(lk: list[list[int]]) -> sympy.Matrix:
    """Matrix with -l_ij off the diagonal and row sums zero."""
    m = len(lk)
    return sympy.Matrix(m, m, lambda i, j: sum(lk[i][k] for k in range(m) if k != i) if i == j else -lk[i][j])


def reduced_determinant(lk: list[list[int]], p: int = 0) -> int:
    """det of the Laplacian with row and column p removed."""
    lam = laplacian(lk)
    lam.row_del(p)
    lam.col_del(p)
    if lam.rows == 0:
        return 1
    return int(lam.det(method="bareiss"))


def spanning_tree_sum(lk: list[list[int]]) -> int:
    """Sum over spanning trees of K_m of the product of edge linking numbers."""
    m = len(lk)
    if m == 1:
        return 1
    graph = nx.complete_graph(m)
    total = 0
    for tree in nx.SpanningTreeIterator(graph):
        term = 1
        for i, j in tree.edges():
            term *= lk[i][j]
            if term == 0:
                break
        total += term
    return total


def c0_closed_form(
    d: SingularLinkDiagram,
    method: Literal["determinant", "trees"] = "determinant",
    p: int = 0,
) -> int:
    """Lowest Conway coefficient of a link with m >= 2 from its linking numbers."""
    if d.is_singular:
        raise SingularInput("c0 closed form needs a diagram without double points")
    if d.m < 2:
        raise SingleComponent("c0 of a knot is 1; the closed form is for m >= 2")
    lk = linking_matrix(d).to_list()
    if method == "trees":
        return spanning_tree_sum(lk)
    if not 0 <= p < d.m:
        raise ValueError(f"deleted index {p} not in 0..{d.m - 1}")
    return reduced_determinant(lk, p)
