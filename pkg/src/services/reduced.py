"""
Reduced Conway Service
Reduced Conway series, its coefficients alpha_k, Sato-Levine and gamma invariants,
and verifiers for their crossing-change jumps
"""

import logging
from dataclasses import dataclass
from itertools import permutations
from typing import Literal, Optional

from services.corpus import ctype2_family
from services.diagram import (
    SingularLinkDiagram,
    delete_components,
    linking_matrix,
    resolve,
    resolve_all,
    resolve_with_map,
    smooth_all,
)
from services.errors import BadSingularity, ConstraintViolated, TruncationTooSmall, WrongComponentCount
from services.finite_type import extend, standard_invariant
from services.skein import c0_closed_form, conway
from utils.polynomial import IntPolynomial, TruncatedSeries

logger = logging.getLogger(__name__)


# ============================================================================
# REDUCED SERIES
# ============================================================================

def component_knots(d: SingularLinkDiagram) -> list[SingularLinkDiagram]:
    return [delete_components(d, {i}) for i in range(d.m)]


def knot_product(d: SingularLinkDiagram, max_degree: Optional[int] = None) -> IntPolynomial:
    """Product of the component polynomials, i.e. the polynomial of their connected sum."""
    product = IntPolynomial.one()
    for knot in component_knots(d):
        poly = conway(knot, max_degree)
        product = product * poly if max_degree is None else product.mul_truncated(poly, max_degree)
    return product


def reduced_conway(d: SingularLinkDiagram, order: int) -> TruncatedSeries:
    """Conway polynomial divided by the product of component polynomials, mod z^(order+1)."""
    if order < d.m - 1:
        raise TruncationTooSmall(f"order {order} is below m-1 = {d.m - 1}")
    numerator = TruncatedSeries.from_polynomial(conway(d, order), order)
    denominator = TruncatedSeries.from_polynomial(knot_product(d, order), order)
    return numerator.divide(denominator)


def alphas(d: SingularLinkDiagram, k: int) -> list[int]:
    """
    alpha_0..alpha_k by the recurrence
    alpha_i = c_i(L) - (alpha_(i-1) c_1(K) + ... + alpha_0 c_i(K)),
    K the connected sum of the components.
    """
    m = d.m
    link = conway(d, m - 1 + 2 * k)
    knot = knot_product(d, 2 * k)
    values: list[int] = []
    for i in range(k + 1):
        value = link[m - 1 + 2 * i]
        for j in range(1, i + 1):
            value -= values[i - j] * knot[2 * j]
        values.append(value)
    return values


def alpha(d: SingularLinkDiagram, k: int) -> int:
    if k < 0:
        raise ValueError(f"alpha index must be non-negative, got {k}")
    return alphas(d, k)[k]


def _require_components(d: SingularLinkDiagram, m: int, what: str):
    if d.m != m:
        raise WrongComponentCount(f"{what} needs {m} components, got {d.m}")


def sato_levine(d: SingularLinkDiagram) -> int:
    """Generalized Sato-Levine invariant alpha_1 of a 2-component link."""
    _require_components(d, 2, "sato_levine")
    return alpha(d, 1)


def gamma3(d: SingularLinkDiagram) -> int:
    """
    alpha_1(L) minus alpha_1(A) * alpha_0(B) over ordered pairs (A, B) of
    distinct 2-component sublinks.
    """
    _require_components(d, 3, "gamma")
    sublinks = {pair: delete_components(d, pair) for pair in ((0, 1), (0, 2), (1, 2))}
    a0 = {pair: alpha(sub, 0) for pair, sub in sublinks.items()}
    a1 = {pair: alpha(sub, 1) for pair, sub in sublinks.items()}
    correction = sum(a1[first] * a0[second] for first, second in permutations(sublinks, 2))
    return alpha(d, 1) - correction


def hat_conway(d: SingularLinkDiagram, max_degree: Optional[int] = None) -> IntPolynomial:
    """Conway polynomial minus z^(m-1) c_0 times the product of component polynomials."""
    poly = conway(d, max_degree)
    c0 = poly[d.m - 1]
    correction = knot_product(d, max_degree).shift(d.m - 1) * c0
    if max_degree is not None:
        correction = correction.truncate(max_degree)
    return poly - correction


# ============================================================================
# JUMP LAWS
# ============================================================================

@dataclass
class JumpInstance:
    """A self double point of component 0 and the lobes of its smoothing."""

    plus: SingularLinkDiagram
    minus: SingularLinkDiagram
    smoothed: SingularLinkDiagram
    eta: int
    zeta: int
    others: list[int]


def jump_instance(ds: SingularLinkDiagram, m: int) -> JumpInstance:
    _require_components(ds, m, "jump check")
    nodes = ds.singular_indices
    if len(nodes) != 1:
        raise BadSingularity(f"expected one double point, got {len(nodes)}")
    x = nodes[0]
    if ds.crossing_components(x) != (0, 0):
        raise BadSingularity(f"double point {x} is not a self-intersection of component 0")

    smoothed, arc_map = resolve_with_map(ds, x, 0)
    n_cycles, new_cycles = len(ds.partition.cycles), len(smoothed.partition.cycles)
    others = []
    for comp in range(1, m):
        arc = ds.least_arc(comp)
        if arc is None:
            others.append(new_cycles + comp - n_cycles)
        else:
            others.append(smoothed.component_of_arc(arc_map[arc]))
    eta, zeta = sorted(set(range(smoothed.m)) - set(others))
    return JumpInstance(resolve(ds, x, 1), resolve(ds, x, -1), smoothed, eta, zeta, others)


def alpha1_jump(ds: SingularLinkDiagram) -> tuple[int, int]:
    """(alpha_1(L+) - alpha_1(L-), l_eta2 * l_zeta2)."""
    inst = jump_instance(ds, 2)
    lk = linking_matrix(inst.smoothed)
    (two,) = inst.others
    expected = lk[inst.eta, two] * lk[inst.zeta, two]
    return alpha(inst.plus, 1) - alpha(inst.minus, 1), expected


def alpha1_jump_check(ds: SingularLinkDiagram) -> bool:
    jump, expected = alpha1_jump(ds)
    logger.debug(f"alpha_1 jump {jump}, predicted {expected}")
    return jump == expected


def gamma_jump(ds: SingularLinkDiagram) -> tuple[int, int]:
    """(gamma(L+) - gamma(L-), l_23 (l_eta2 l_zeta3 + l_zeta2 l_eta3))."""
    inst = jump_instance(ds, 3)
    lk = linking_matrix(inst.smoothed)
    two, three = inst.others
    eta, zeta = inst.eta, inst.zeta
    expected = lk[two, three] * (lk[eta, two] * lk[zeta, three] + lk[zeta, two] * lk[eta, three])
    return gamma3(inst.plus) - gamma3(inst.minus), expected


def gamma_jump_check(ds: SingularLinkDiagram) -> bool:
    jump, expected = gamma_jump(ds)
    logger.debug(f"gamma jump {jump}, predicted {expected}")
    return jump == expected


# ============================================================================
# COLORED TYPE 2 WITNESS
# ============================================================================

def _check_constraint(a: int, b: int, c: int, d: int):
    if a + b + c + 2 * d != 0:
        raise ConstraintViolated(f"a+b+c+2d must vanish, got {a + b + c + 2 * d}")


def ctype2_closed_form(a: int, b: int, c: int, d: int) -> int:
    _check_constraint(a, b, c, d)
    return (a + b + c + d) * d + (a + d) ** 2 + (b + d) ** 2 + (c + d) ** 2


def ctype2_terms(a: int, b: int, c: int, d: int) -> dict[str, int]:
    """
    c_0 of the family with all double points smoothed (L000) and with two
    resolved positively and the third smoothed (L++0, L+0+, L0++).
    """
    family = ctype2_family(a, b, c, d)
    nodes = family.singular_indices
    terms = {"000": c0_closed_form(smooth_all(family, nodes)[0])}
    for k, smoothed in enumerate(nodes):
        name = "".join("0" if i == k else "+" for i in range(len(nodes)))
        resolved = resolve_all(family, {x: 1 for x in nodes if x != smoothed})
        terms[name] = c0_closed_form(smooth_all(resolved, [smoothed])[0])
    return terms


def ctype2_witness(a: int, b: int, c: int, d: int, method: Literal["skein", "closed"] = "skein") -> int:
    """
    alpha_2 extended over the three double points of the family diagram.

    "skein" runs the full resolution sum; "closed" combines the four c_0 values
    c0(L000) - c0(L++0) - c0(L+0+) - c0(L0++).
    """
    _check_constraint(a, b, c, d)
    if method == "closed":
        terms = ctype2_terms(a, b, c, d)
        return terms["000"] - terms["0++"] - terms["+0+"] - terms["++0"]

    family = ctype2_family(a, b, c, d)
    value = extend(standard_invariant("alpha2", m=2), family)
    logger.info(f"colored type 2 witness at {(a, b, c, d)}: {value}")
    return value
