"""Convex-roof estimation of the exchange measure for mixed states.

The target is inf over pure-state decompositions of rho of the ensemble
average of :func:`segrent.measures.measure_F`. Decompositions are swept
through the standard isometry parameterization: if rho has kept
eigenpairs (lambda_i, v_i), every size-K decomposition arises from a
K x r isometry V via phi_k = sum_i V_ki sqrt(lambda_i) v_i, with weights
|phi_k|^2. The search runs a derivative-free pattern descent over a
Hermitian generator H (V = first r columns of exp(iH)) with random
restarts; the returned value is always the verified average of a
concrete decomposition, hence a certified upper bound on the infimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import ConfigError, DimensionError, IsometryError
from .measures import DEFAULT_NORM_F, measure_F
from .segre_ideal import _strides, enumerate_perm_classes
from .tensor_core import BoxTensor, Decomposition, DensityMatrix

RANK_FLOOR = 1e-12       # eigenvalues below this do not count toward the rank
WEIGHT_FLOOR = 1e-14     # ensemble members below this weight are dropped
_INITIAL_STEP = 0.5
_VALUE_FLOOR = 1e-12     # objective is nonnegative; stop a restart at ~0


@dataclass(frozen=True)
class RoofConfig:
    """Search budget for the decomposition sweep.

    ensemble_size of None means min(2 rank, rank + 4), chosen because
    optimal ensembles can need more members than the rank while unbounded
    sizes are intractable.
    """

    ensemble_size: Optional[int] = None
    restarts: int = 8
    max_iters: int = 2000
    step_tolerance: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.ensemble_size is not None and self.ensemble_size < 1:
            raise ConfigError(f"ensemble_size must be >= 1, got {self.ensemble_size}")
        if self.restarts < 1:
            raise ConfigError(f"restarts must be >= 1, got {self.restarts}")
        if self.max_iters < 1:
            raise ConfigError(f"max_iters must be >= 1, got {self.max_iters}")
        if not self.step_tolerance > 0.0:
            raise ConfigError("step_tolerance must be positive")


@dataclass(frozen=True)
class RoofEstimate:
    """Best decomposition found and the descent diagnostics."""

    value: float
    decomposition: Decomposition
    trace: tuple[float, ...]
    restart_bests: tuple[float, ...]
    notes: tuple[str, ...] = ()


def _kept_eigs(rho: DensityMatrix):
    """Eigenpairs above the rank floor, eigenvalues descending."""
    lam, vecs = np.linalg.eigh(rho.mat)
    lam, vecs = lam[::-1], vecs[:, ::-1]
    kept = lam > RANK_FLOOR
    return lam[kept], vecs[:, kept]


def eigen_ensemble(rho: DensityMatrix) -> Decomposition:
    """Canonical decomposition from the eigenbasis of rho."""
    lam, vecs = _kept_eigs(rho)
    states = tuple(BoxTensor(rho.dims, vecs[:, i]) for i in range(lam.size))
    return Decomposition(tuple(float(x) for x in lam), states)


def ensemble_from_isometry(rho: DensityMatrix, v) -> Decomposition:
    """Decomposition generated by a K x r isometry over the eigenbasis.

    Rows with weight at or below the drop floor are discarded; the
    remaining mixture reconstructs rho (Schrodinger-HJW).
    """
    lam, vecs = _kept_eigs(rho)
    r = lam.size
    v = np.asarray(v, dtype=complex)
    if v.ndim != 2 or v.shape[1] != r or v.shape[0] < r:
        raise IsometryError(
            f"isometry must be K x {r} with K >= {r}, got shape {v.shape}")
    gram = v.conj().T @ v
    if float(np.max(np.abs(gram - np.eye(r)))) > 1e-10:
        raise IsometryError("columns are not orthonormal within 1e-10")
    phi = v @ (vecs * np.sqrt(lam)).T                       # (K, d)
    weights = np.einsum("kd,kd->k", phi, phi.conj()).real
    kept = weights > WEIGHT_FLOOR
    states = tuple(BoxTensor(rho.dims, phi[k] / math.sqrt(weights[k]))
                   for k in np.flatnonzero(kept))
    return Decomposition(tuple(float(w) for w in weights[kept]), states)


@lru_cache(maxsize=32)
def _minor_index_table(sizes: tuple[int, ...]):
    """Flattened gather indices for every canonical class and index pair."""
    total = math.prod(sizes)
    strides = _strides(sizes)
    a, b = np.triu_indices(total, 1)
    digits_a = [(a // strides[j]) % sizes[j] for j in range(len(sizes))]
    digits_b = [(b // strides[j]) % sizes[j] for j in range(len(sizes))]
    a_swapped, b_swapped = [], []
    classes = enumerate_perm_classes(len(sizes))
    for c in classes:
        delta = sum((digits_b[j] - digits_a[j]) * strides[j] for j in c.swap_set)
        a_swapped.append(a + delta)
        b_swapped.append(b - delta)
    n = len(classes)
    table = (np.tile(a, n), np.tile(b, n),
             np.concatenate(a_swapped) if n else a[:0],
             np.concatenate(b_swapped) if n else b[:0])
    for arr in table:
        arr.setflags(write=False)
    return table


def _ensemble_objective(sizes: tuple[int, ...]):
    """Batched sum_k of the unnormalized exchange measure of row phi_k.

    For unnormalized rows the per-row value sqrt(N sum |g|^2) already
    equals weight * measure of the normalized state, because the
    generators are quadratic in the amplitudes.
    """
    ia, ib, ja, jb = _minor_index_table(sizes)

    def value(phi: np.ndarray) -> np.ndarray:          # (..., K, d) -> (...)
        g = phi[..., ia] * phi[..., ib] - phi[..., ja] * phi[..., jb]
        ssq = np.sum(g.real * g.real + g.imag * g.imag, axis=-1)
        return np.sum(np.sqrt(DEFAULT_NORM_F * ssq), axis=-1)

    return value


def _batched_unitaries(thetas: np.ndarray, k: int) -> np.ndarray:
    """exp(iH) for each parameter row encoding a Hermitian H of order k."""
    bsz = thetas.shape[0]
    iu = np.triu_indices(k, 1)
    npairs = iu[0].size
    h = np.zeros((bsz, k, k), dtype=complex)
    diag = np.arange(k)
    h[:, diag, diag] = thetas[:, :k]
    off = thetas[:, k:k + npairs] + 1j * thetas[:, k + npairs:]
    h[:, iu[0], iu[1]] = off
    h[:, iu[1], iu[0]] = off.conj()
    w, u = np.linalg.eigh(h)
    return (u * np.exp(1j * w)[:, None, :]) @ u.conj().swapaxes(-1, -2)


def roof_F(rho: DensityMatrix, config: RoofConfig | None = None) -> RoofEstimate:
    """Upper-bound estimate of the mixed-state exchange measure.

    Runs pattern descent over the isometry generator from random starts
    (plus the eigen-decomposition as the initial incumbent) and reports
    the best decomposition average found. Deterministic for a fixed seed:
    restart seeds come from fixed seed-sequence splitting, so results do
    not depend on scheduling. Desk scale: total dimension <= 64.
    """
    cfg = config or RoofConfig()
    lam, vecs = _kept_eigs(rho)
    r = lam.size
    k = min(2 * r, r + 4) if cfg.ensemble_size is None else int(cfg.ensemble_size)
    if k < r:
        raise ConfigError(f"ensemble_size {k} is below the state rank {r}")
    notes = (f"ensemble size capped at K={k}; the infimum ranges over "
             "all decomposition sizes", )

    if r == 1:
        # every decomposition of a pure state repeats it up to phase
        dec = eigen_ensemble(rho)
        value = float(math.fsum(w * measure_F(s).value
                                for w, s in zip(dec.weights, dec.states)))
        return RoofEstimate(value, dec, (value,), (), notes)

    w_rows = (vecs * np.sqrt(lam)).T                      # (r, d)
    ensemble_value = _ensemble_objective(rho.dims.sizes)
    n_params = k * k

    def objective(thetas: np.ndarray) -> np.ndarray:
        v = _batched_unitaries(thetas, k)[:, :, :r]
        return ensemble_value(v @ w_rows)

    theta_best = np.zeros(n_params)
    best = float(objective(theta_best[None])[0])
    trace = [best]
    restart_bests = []
    for seq in np.random.SeedSequence(cfg.seed).spawn(cfg.restarts):
        rng = np.random.default_rng(seq)
        theta = rng.uniform(-np.pi, np.pi, n_params)
        fval = float(objective(theta[None])[0])
        step = _INITIAL_STEP
        iters = 0
        while iters < cfg.max_iters and step > cfg.step_tolerance \
                and fval > _VALUE_FLOOR:
            # fresh orthonormal poll directions each sweep: axis-aligned
            # polls stall on the |.|-kinks of the objective
            directions, _ = np.linalg.qr(rng.standard_normal((n_params, n_params)))
            cand = np.concatenate([theta + step * directions.T,
                                   theta - step * directions.T])
            vals = objective(cand)
            pick = int(np.argmin(vals))
            if vals[pick] < fval:
                theta = cand[pick]
                fval = float(vals[pick])
                step = min(step * 2.0, _INITIAL_STEP)
            else:
                step *= 0.5
            iters += 1
            if fval < best:
                best = fval
                theta_best = theta
            trace.append(best)
        restart_bests.append(fval)

    v_best = _batched_unitaries(theta_best[None], k)[0][:, :r]
    dec = ensemble_from_isometry(rho, v_best)
    value = float(math.fsum(w * measure_F(s).value
                            for w, s in zip(dec.weights, dec.states)))
    return RoofEstimate(value, dec, tuple(trace), tuple(restart_bests), notes)


def wootters_oracle(rho: DensityMatrix) -> float:
    """Closed-form two-qubit concurrence, as an independent cross-check.

    max(0, l1 - l2 - l3 - l4) with l_i the descending square roots of the
    eigenvalues of rho (sy x sy) conj(rho) (sy x sy).
    """
    if rho.dims.sizes != (2, 2):
        raise DimensionError(
            f"closed form needs dims (2, 2), got {rho.dims.sizes}")
    sy = np.array([[0.0, -1.0j], [1.0j, 0.0]])
    yy = np.kron(sy, sy)
    spectrum = np.linalg.eigvals(rho.mat @ yy @ rho.mat.conj() @ yy)
    lam = np.sort(np.sqrt(np.abs(spectrum.real)))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))
