"""
Sampler Service
Seeded random diagrams for probes and property checks

Samples are closures of random braid words with a few clasp or
Reidemeister-II insertions. Chosen crossings of the word become double
points. One seed drives every choice.
"""

import logging
import random
from typing import Callable, Optional

from services.config import get_seed
from services.diagram import SingularLinkDiagram
from services.errors import SamplerExhausted
from utils.planar_builder import braid_closure, build

logger = logging.getLogger(__name__)

DEFAULT_MAX_ATTEMPTS = 500


class BraidSampler:
    """
    Random braid closures with a target shape.

    Args:
        seed: RNG seed (LINKINV_SEED by default)
        components: required component count, or None for any
        strands: inclusive range of braid widths
        length: inclusive range of word lengths, insertions included
        double_points: how many crossings to turn into double points
        self_only: double points only at self-crossings
        on_component: double points only at self-crossings of this component
    """

    def __init__(
        self,
        seed: Optional[int] = None,
        components: Optional[int] = None,
        strands: tuple[int, int] = (2, 4),
        length: tuple[int, int] = (1, 8),
        double_points: int = 0,
        self_only: bool = False,
        on_component: Optional[int] = None,
        max_attempts: int = DEFAULT_MAX_ATTEMPTS,
    ):
        self.seed = get_seed() if seed is None else seed
        self.rng = random.Random(self.seed)
        self.components = components
        self.strands = strands
        self.length = length
        self.double_points = double_points
        self.self_only = self_only or on_component is not None
        self.on_component = on_component
        self.max_attempts = max_attempts
        self.last_word: list[int] = []

    def _generator(self, strands: int) -> int:
        return self.rng.randint(1, strands - 1) * self.rng.choice((1, -1))

    def word(self) -> tuple[list[int], int]:
        """Random word and its width."""
        strands = self.rng.randint(*self.strands)
        low, high = self.length
        size = self.rng.randint(low, high)
        word = [self._generator(strands) for _ in range(size)]
        # clasp (g, g) or Reidemeister-II (g, -g) insertions while room is left
        for _ in range(self.rng.randint(0, 2)):
            if len(word) + 2 > high:
                break
            g = self._generator(strands)
            at = self.rng.randint(0, len(word))
            word[at:at] = [g, g if self.rng.random() < 0.5 else -g]
        return word, strands

    def _eligible(self, d: SingularLinkDiagram, index: int) -> bool:
        if not self.self_only:
            return True
        first, second = d.crossing_components(index)
        if first != second:
            return False
        return self.on_component is None or first == self.on_component

    def sample(self) -> SingularLinkDiagram:
        for _ in range(self.max_attempts):
            word, strands = self.word()
            d = build(braid_closure(word, strands)).diagram
            if self.components is not None and d.m != self.components:
                continue
            if not self.double_points:
                self.last_word = word
                return d
            candidates = [i for i in range(d.n_crossings) if self._eligible(d, i)]
            if len(candidates) < self.double_points:
                continue
            chosen = sorted(self.rng.sample(candidates, self.double_points))
            singular = build(braid_closure(word, strands, singular=chosen)).diagram
            if all(self._eligible(singular, i) for i in chosen):
                self.last_word = word
                return singular
        logger.warning(f"sampler (seed {self.seed}) gave up after {self.max_attempts} attempts")
        raise SamplerExhausted(
            f"no diagram with m={self.components} and {self.double_points} eligible double point(s) "
            f"in {self.max_attempts} attempts"
        )

    def __call__(self) -> SingularLinkDiagram:
        return self.sample()

    def take(self, count: int) -> list[SingularLinkDiagram]:
        return [self.sample() for _ in range(count)]


def fixed_sampler(d: SingularLinkDiagram) -> Callable[[], SingularLinkDiagram]:
    """Sampler that always yields the same diagram (for named families)."""
    return lambda: d
