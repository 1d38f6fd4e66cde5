"""Pure-state entanglement measures built on the quadratic generators.

Two measures are provided. The slot measure sums |g|^2 over the slot
generators; with its default normalization it equals the generalized
concurrence sqrt(2 (1 - Tr rho_A^2)) on bipartite states (the pairing
convention double-counts each 2x2 determinant exactly enough for the
constant to be 1; the test suite pins this against an independent
partial-trace oracle). The exchange measure sums over every canonical
exchange class and every index pair; its default normalization of 2
makes it agree with the slot measure on bipartite states, where the two
families coincide up to complement-halving.

Both vanish identically on product states. For four or more parties the
slot measure still certifies full separability but is not a faithful
quantifier, which is surfaced as a report note rather than an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional, Union

import numpy as np

from .errors import ConfigError, DimensionError, NormalizationError
from .segre_ideal import PermClass, class_generator_sums, slot_generator_sums
from .tensor_core import BoxTensor, NORM_TOL, reduced_purity

DEFAULT_NORM_E = 1.0
DEFAULT_NORM_F = 2.0

_NOTE_SINGLE_PARTY = "single-party state: no quadratic generators, value is 0"
_NOTE_MANY_PARTIES = ("slot-generator sum for m >= 4: certifies full separability "
                      "but is not a faithful entanglement quantifier")


@dataclass(frozen=True)
class MeasureConfig:
    """Normalization override and breakdown switch for a measure run."""

    normalization: Optional[float] = None
    include_breakdown: bool = False

    def __post_init__(self):
        if self.normalization is not None and not self.normalization > 0.0:
            raise ConfigError(
                f"normalization must be positive, got {self.normalization}")


@dataclass(frozen=True)
class MeasureReport:
    """Measure value with its generator sum and optional per-class split."""

    value: float
    sum_of_squares: float
    normalization: float
    per_class: Optional[Mapping[Union[int, PermClass], float]] = None
    notes: tuple[str, ...] = ()


def _require_normalized(state: BoxTensor) -> None:
    norm_sq = float(np.vdot(state.amps, state.amps).real)
    if abs(norm_sq - 1.0) > NORM_TOL:
        raise NormalizationError(
            f"measures require a unit-norm state; |amps|^2 = {norm_sq!r}. "
            "Normalize explicitly instead of relying on silent scaling.")


def _report(norm: float, partials, keys, breakdown: bool,
            notes: tuple[str, ...]) -> MeasureReport:
    sum_sq = float(math.fsum(float(p) for p in partials))
    per_class = dict(zip(keys, (float(p) for p in partials))) if breakdown else None
    return MeasureReport(math.sqrt(norm * sum_sq), sum_sq, norm, per_class, notes)


def measure_E(state: BoxTensor, config: MeasureConfig | None = None) -> MeasureReport:
    """Slot-generator measure: sqrt(N * sum |slot minors|^2).

    Default N = 1, calibrated so the bipartite value equals the
    generalized concurrence. Zero exactly on product states.
    """
    cfg = config or MeasureConfig()
    norm = DEFAULT_NORM_E if cfg.normalization is None else cfg.normalization
    _require_normalized(state)
    m = state.dims.m
    if m < 2:
        return _report(norm, [], [], cfg.include_breakdown, (_NOTE_SINGLE_PARTY,))
    sums, _ = slot_generator_sums(state)
    notes = (_NOTE_MANY_PARTIES,) if m >= 4 else ()
    return _report(norm, sums, range(m), cfg.include_breakdown, notes)


def measure_F(state: BoxTensor, config: MeasureConfig | None = None) -> MeasureReport:
    """Exchange-class measure: sqrt(N * sum over classes and pairs of |g|^2).

    Sums every canonical exchange family (one representative per
    complement pair) over all unordered index pairs. Default N = 2 so the
    bipartite value matches :func:`measure_E`.
    """
    cfg = config or MeasureConfig()
    norm = DEFAULT_NORM_F if cfg.normalization is None else cfg.normalization
    _require_normalized(state)
    if state.dims.m < 2:
        return _report(norm, [], [], cfg.include_breakdown, (_NOTE_SINGLE_PARTY,))
    classes, sums, _ = class_generator_sums(state)
    return _report(norm, sums, classes, cfg.include_breakdown, ())


def bipartite_concurrence_oracle(state: BoxTensor) -> float:
    """sqrt(2 (1 - Tr rho_A^2)) for a normalized two-party state.

    Computed from the reduced purity, independently of the generator
    sums; used to pin the slot measure's normalization.
    """
    if state.dims.m != 2:
        raise DimensionError(
            f"concurrence oracle needs exactly two parties, got {state.dims.m}")
    _require_normalized(state)
    gap = 2.0 * (1.0 - reduced_purity(state, [0]))
    return math.sqrt(max(gap, 0.0))
