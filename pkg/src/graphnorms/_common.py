"""Small shared types: comparison results, error classes and seeded streams."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np


class GuardError(ValueError):
    """A size or state-count guard refused the computation."""


class InputError(ValueError):
    """Malformed input file or argument."""


class Gap(NamedTuple):
    """Both sides of an inequality ``lhs <= rhs`` (or an identity)."""

    lhs: float
    rhs: float

    @property
    def value(self) -> float:
        return self.lhs - self.rhs

    @property
    def relative(self) -> float:
        return self.value / max(1.0, abs(self.lhs), abs(self.rhs))


def trial_rngs(seed: int, trials: int) -> list[np.random.Generator]:
    """One independent PCG64 stream per trial.

    Stream ``i`` is ``PCG64(SeedSequence(seed).spawn(trials)[i])``, so a trial's
    samples depend only on ``(seed, i)`` and not on how trials are scheduled.
    """
    children = np.random.SeedSequence(seed).spawn(trials)
    return [np.random.Generator(np.random.PCG64(c)) for c in children]
