"""Quadratic generators of product-state varieties and membership tests.

Two generator families are handled. The slot family pairs two
multi-indices k, l and exchanges their value at a single slot j:

    g = a[k] a[l] - a[k<-l_j] a[l<-k_j]

All these vanish exactly on outer-product (rank-one) tensors, and their
common zero locus is exactly the set of product states. The extended
family exchanges the values on an arbitrary nonempty proper subset S of
slots; its singletons reproduce the slot family, and S and its
complement give identical generators, so enumeration keeps one
representative per pair by excluding the last slot from S.

Residual scans never materialize generator objects: pairs are streamed
in vectorized index blocks, so memory stays bounded for any dims.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .errors import DimensionError, GeneratorSpecError, PartitionError
from .tensor_core import BoxTensor, Dims, DimsLike, as_dims, multi_index, segre_embed

MATERIALIZE_CAP = 4096       # largest Pi N_j for which generator lists are built
DEFAULT_MEMBER_TOL = 1e-10
_PAIR_BLOCK_BUDGET = 1 << 20     # index pairs held per streamed block
_BIG_SUM_THRESHOLD = 1000        # above this, accumulate in extended precision


@dataclass(frozen=True)
class MinorSpec:
    """One slot generator: slot j plus a lexicographically ordered pair."""

    slot: int
    pair: tuple[tuple[int, ...], tuple[int, ...]]

    def __post_init__(self):
        k, l = (tuple(int(i) for i in t) for t in self.pair)
        if self.slot < 0:
            raise GeneratorSpecError(f"slot must be >= 0, got {self.slot}")
        if len(k) != len(l) or k == l:
            raise GeneratorSpecError("pair must be two distinct equal-length tuples")
        if not self.slot < len(k):
            raise GeneratorSpecError(f"slot {self.slot} out of range for {k}")
        if k[self.slot] == l[self.slot]:
            raise GeneratorSpecError("pair must differ at the generator slot")
        if k > l:
            raise GeneratorSpecError("pair must be in lexicographic order k < l")
        object.__setattr__(self, "pair", (k, l))


@dataclass(frozen=True)
class PermClass:
    """Canonical index-exchange family: a sorted subset of slot positions."""

    swap_set: tuple[int, ...]

    def __post_init__(self):
        s = tuple(sorted({int(j) for j in self.swap_set}))
        if not s:
            raise GeneratorSpecError("swap set must be nonempty")
        if s[0] < 0:
            raise GeneratorSpecError("swap set entries must be >= 0")
        object.__setattr__(self, "swap_set", s)


@dataclass(frozen=True)
class MembershipReport:
    """Max generator magnitude at a state, with the witness achieving it."""

    residual: float
    worst: object
    is_member: bool
    tolerance: float


SwapLike = Union[PermClass, Iterable[int]]


def _strides(sizes: Sequence[int]) -> list[int]:
    out = [1] * len(sizes)
    for j in range(len(sizes) - 2, -1, -1):
        out[j] = out[j + 1] * sizes[j + 1]
    return out


def iter_segre_generators(dims: DimsLike) -> Iterator[MinorSpec]:
    """Stream the slot generators in (slot, k, l) lexicographic order.

    For each slot j, every unordered pair {k, l} with k_j != l_j that also
    differs somewhere off slot j; pairs differing only at j are omitted
    because their generator is identically zero.
    """
    dims = as_dims(dims)
    indices = list(itertools.product(*[range(n) for n in dims.sizes]))
    for j in range(dims.m):
        for a, k in enumerate(indices):
            for l in indices[a + 1:]:
                if k[j] == l[j]:
                    continue
                if all(k[i] == l[i] for i in range(dims.m) if i != j):
                    continue
                yield MinorSpec(j, (k, l))


def enumerate_segre_generators(dims: DimsLike) -> list[MinorSpec]:
    """Materialize :func:`iter_segre_generators` (empty for one party)."""
    dims = as_dims(dims)
    if dims.total > MATERIALIZE_CAP:
        raise DimensionError(
            f"refusing to materialize generators for {dims.total} > "
            f"{MATERIALIZE_CAP} basis states; use iter_segre_generators")
    return list(iter_segre_generators(dims))


def enumerate_perm_classes(m: int) -> list[PermClass]:
    """Canonical exchange families: nonempty subsets of {0..m-2}.

    There are 2^(m-1) - 1 of them; the last slot is excluded because a
    subset and its complement generate the same polynomials.
    """
    m = int(m)
    if m < 1:
        raise DimensionError(f"party count must be >= 1, got {m}")
    subsets = []
    for r in range(1, m):
        subsets.extend(itertools.combinations(range(m - 1), r))
    return [PermClass(s) for s in sorted(subsets, key=lambda s: (len(s), s))]


def _check_tuple(t: Sequence[int], dims: Dims, label: str) -> tuple[int, ...]:
    t = tuple(int(i) for i in t)
    if len(t) != dims.m:
        raise GeneratorSpecError(
            f"{label} has {len(t)} components, dims have {dims.m}")
    for i, n in zip(t, dims.sizes):
        if not 0 <= i < n:
            raise GeneratorSpecError(f"{label} component {i} out of range [0, {n})")
    return t


def evaluate_minor(state: BoxTensor, spec: MinorSpec) -> complex:
    """Value of one slot generator at the state."""
    dims = state.dims
    if spec.slot >= dims.m:
        raise GeneratorSpecError(f"slot {spec.slot} out of range for dims {dims.sizes}")
    k = _check_tuple(spec.pair[0], dims, "k")
    l = _check_tuple(spec.pair[1], dims, "l")
    return evaluate_perm_minor(state, (spec.slot,), (k, l))


def evaluate_perm_minor(state: BoxTensor, swap: SwapLike,
                        pair: Sequence[Sequence[int]]) -> complex:
    """Value of one exchange generator at the state.

    ``swap`` may be a PermClass or any nonempty proper subset of slot
    positions (raw subsets are accepted so that a set and its complement
    can both be evaluated, e.g. to check that they agree).
    """
    dims = state.dims
    slots = swap.swap_set if isinstance(swap, PermClass) else tuple(sorted({int(j) for j in swap}))
    if not slots:
        raise GeneratorSpecError("swap set must be nonempty")
    if any(j < 0 or j >= dims.m for j in slots):
        raise GeneratorSpecError(f"swap set {slots} out of range for dims {dims.sizes}")
    if len(slots) >= dims.m:
        raise GeneratorSpecError("swap set must be a proper subset of the slots")
    k, l = pair
    k = _check_tuple(k, dims, "k")
    l = _check_tuple(l, dims, "l")
    if k == l:
        raise GeneratorSpecError("pair members must be distinct")
    ks, ls = list(k), list(l)
    for j in slots:
        ks[j], ls[j] = l[j], k[j]
    t = state.tensor
    return complex(t[k] * t[l] - t[tuple(ks)] * t[tuple(ls)])


def _pair_blocks(total: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Stream all flat index pairs a < b as (A, B) array blocks."""
    rows_per_block = max(1, _PAIR_BLOCK_BUDGET // max(total, 1))
    for r0 in range(0, total - 1, rows_per_block):
        rows = np.arange(r0, min(r0 + rows_per_block, total - 1))
        counts = total - 1 - rows
        a = np.repeat(rows, counts)
        starts = np.concatenate(([0], np.cumsum(counts)))[:-1]
        b = np.arange(counts.sum()) - np.repeat(starts, counts) + a + 1
        yield a, b


def _scan_blocks(amps: np.ndarray, dims: Dims, subsets: Sequence[tuple[int, ...]],
                 slot_filter: bool):
    """Accumulate sum |g|^2 and max |g| per generator family.

    ``subsets`` lists the slot sets to exchange (singletons for the slot
    family). ``slot_filter`` restricts singleton families to the pairs the
    slot enumeration keeps; the extended family evaluates every pair.
    Returns (per-family sums, (max, family_index, a, b) or None).
    """
    sizes = dims.sizes
    strides = _strides(sizes)
    acc_dtype = np.longdouble if dims.total > _BIG_SUM_THRESHOLD else np.float64
    sums = np.zeros(len(subsets), dtype=acc_dtype)
    worst = None
    for a, b in _pair_blocks(dims.total):
        digits_a = [(a // strides[j]) % sizes[j] for j in range(dims.m)]
        digits_b = [(b // strides[j]) % sizes[j] for j in range(dims.m)]
        prod_ab = amps[a] * amps[b]
        for fam, subset in enumerate(subsets):
            delta = np.zeros(a.shape, dtype=a.dtype)
            for j in subset:
                delta += (digits_b[j] - digits_a[j]) * strides[j]
            if slot_filter:
                j = subset[0]
                keep = (digits_a[j] != digits_b[j]) & \
                       (a - digits_a[j] * strides[j] != b - digits_b[j] * strides[j])
                if not keep.any():
                    continue
                vals = prod_ab[keep] - amps[a[keep] + delta[keep]] * amps[b[keep] - delta[keep]]
                a_f, b_f = a[keep], b[keep]
            else:
                vals = prod_ab - amps[a + delta] * amps[b - delta]
                a_f, b_f = a, b
            mags = np.abs(vals)
            sums[fam] += np.sum(mags * mags, dtype=acc_dtype)
            top = int(np.argmax(mags))
            if worst is None or mags[top] > worst[0]:
                worst = (float(mags[top]), fam, int(a_f[top]), int(b_f[top]))
    return sums.astype(np.float64), worst


def slot_generator_sums(state: BoxTensor):
    """Per-slot sum of |generator|^2 plus the worst slot witness."""
    dims = state.dims
    if dims.m < 2:
        return np.zeros(0), None
    subsets = [(j,) for j in range(dims.m)]
    return _scan_blocks(state.amps, dims, subsets, slot_filter=True)


def class_generator_sums(state: BoxTensor):
    """Per-canonical-class sum of |generator|^2 plus the worst witness."""
    dims = state.dims
    classes = enumerate_perm_classes(dims.m)
    if not classes:
        return [], np.zeros(0), None
    sums, worst = _scan_blocks(state.amps, dims,
                               [c.swap_set for c in classes], slot_filter=False)
    return classes, sums, worst


def segre_residual(state: BoxTensor,
                   tolerance: float = DEFAULT_MEMBER_TOL) -> MembershipReport:
    """Membership test against the product-state variety.

    The residual is the largest slot-generator magnitude at the state; it
    is zero (within tolerance) exactly on embedded product states.
    """
    dims = state.dims
    if dims.m < 2:
        return MembershipReport(0.0, None, True, tolerance)
    _, worst = slot_generator_sums(state)
    mag, fam, a, b = worst
    spec = MinorSpec(fam, (multi_index(a, dims), multi_index(b, dims)))
    return MembershipReport(mag, spec, mag <= tolerance, tolerance)


def t_variety_residual(state: BoxTensor,
                       tolerance: float = DEFAULT_MEMBER_TOL) -> MembershipReport:
    """Membership test against the full exchange-generator variety.

    Maximizes over every canonical class and every unordered index pair;
    always at least the Segre residual since the families are a superset.
    """
    dims = state.dims
    classes, _, worst = class_generator_sums(state)
    if worst is None:
        return MembershipReport(0.0, None, True, tolerance)
    mag, fam, a, b = worst
    witness = (classes[fam], (multi_index(a, dims), multi_index(b, dims)))
    return MembershipReport(mag, witness, mag <= tolerance, tolerance)


def check_partition_commutativity(factors: Sequence[Sequence[complex]],
                                  split: int) -> float:
    """Max deviation between direct and two-stage product embeddings.

    Embeds all parties at once, then embeds parties [0, split) and
    [split, m) separately and joins the two flattened blocks with a
    bipartite embedding. The two routes agree up to rounding because the
    outer product is associative.
    """
    m = len(factors)
    split = int(split)
    if m < 2:
        raise PartitionError("need at least two factors to partition")
    if not 1 <= split < m:
        raise PartitionError(f"split must satisfy 1 <= split < {m}, got {split}")
    direct = segre_embed(factors)
    left = segre_embed(factors[:split])
    right = segre_embed(factors[split:])
    staged = segre_embed([left.amps, right.amps])
    return float(np.max(np.abs(direct.amps - staged.amps)))
