"""The four tomography strategies.

* ``Static``: the sample budget is split across the three Pauli axes and a
  single estimate is fitted.
* ``Adaptive(alpha)``: a fraction alpha of the budget buys a preliminary
  estimate from static tomography; the remainder is measured in a mutually
  unbiased triplet whose first basis diagonalizes that estimate; the final
  fit uses the records of both phases.
* ``AdaptivePow(exponent)``: same two-phase scheme with the preliminary budget
  N^exponent (default 2/3) instead of a constant fraction.
* ``ReducedAdaptive(alpha)``: the whole second phase is spent on the single
  diagonal axis of the preliminary estimate (one extra setting in total).
* ``KnownBasis``: a diagnostic ceiling, not a realizable protocol: all samples
  are measured in the mutually unbiased triplet of the *true* eigenbasis.

Budget accounting is exact: the preliminary budget is round(alpha N) (half
away from zero) and within each phase the per-axis split is floor thirds with
the remainder given to the earliest axes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import BudgetError, InvalidStateError
from .estimation import mle
from .measurement import PAULI_AXES, CountRecord, ErrorModel, RngContext, measure_setting
from .states import check_density, eigendecompose, fidelity, mub_triplet


@dataclass(frozen=True)
class Static:
    """Fixed Pauli-frame tomography."""


@dataclass(frozen=True)
class Adaptive:
    """Two-phase tomography with preliminary budget alpha * N."""

    alpha: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise InvalidStateError(f"alpha must be in (0, 1), got {self.alpha}")


@dataclass(frozen=True)
class AdaptivePow:
    """Two-phase tomography with preliminary budget N ** exponent."""

    exponent: float = 2.0 / 3.0

    def __post_init__(self):
        if not 0.0 < self.exponent < 1.0:
            raise InvalidStateError(f"exponent must be in (0, 1), got {self.exponent}")


@dataclass(frozen=True)
class ReducedAdaptive:
    """Adaptive tomography spending the whole second phase on one axis."""

    alpha: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise InvalidStateError(f"alpha must be in (0, 1), got {self.alpha}")


@dataclass(frozen=True)
class KnownBasis:
    """Measures in the true state's eigenbasis for all samples (diagnostic)."""


ProtocolSpec = Union[Static, Adaptive, AdaptivePow, ReducedAdaptive, KnownBasis]


@dataclass(frozen=True)
class RunResult:
    """Outcome of one simulated experiment."""

    rho_hat: np.ndarray
    rho_prelim: Optional[np.ndarray]
    records: tuple[CountRecord, ...]
    infidelity: float
    total_shots: int


def protocol_name(spec: ProtocolSpec) -> str:
    """Canonical printable name, stable across runs (used in CSV and hashing)."""
    if isinstance(spec, Static):
        return "static"
    if isinstance(spec, Adaptive):
        return f"adaptive(alpha={float(spec.alpha)!r})"
    if isinstance(spec, AdaptivePow):
        return f"adaptive-pow(exponent={float(spec.exponent)!r})"
    if isinstance(spec, ReducedAdaptive):
        return f"reduced-adaptive(alpha={float(spec.alpha)!r})"
    if isinstance(spec, KnownBasis):
        return "known-basis"
    raise TypeError(f"unknown protocol {spec!r}")


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def _split_three(total: int) -> list[int]:
    base = total // 3
    rem = total - 3 * base
    return [base + (1 if i < rem else 0) for i in range(3)]


def _require_positive(shots: list[int], what: str) -> None:
    if min(shots) < 1:
        raise BudgetError(f"{what} split {shots} leaves a setting without shots")


def _measure_batch(rho, axes, shots, model, rng, offset) -> list[CountRecord]:
    return [
        measure_setting(rho, axes[i], shots[i], model, rng,
                        experiment_index=0, setting_index=offset + i)
        for i in range(len(axes))
    ]


def run_protocol(
    spec: ProtocolSpec,
    rho_true: np.ndarray,
    n_total: int,
    error_model: ErrorModel,
    rng: RngContext,
) -> RunResult:
    """Simulate one experiment of ``n_total`` samples and reconstruct a state.

    Alignment errors apply to every setting of both phases; adaptation
    decisions are made from the estimator's view (intended axes only).
    Deterministic: identical arguments give a bit-identical result.
    """
    check_density(rho_true)
    if n_total < 6:
        raise BudgetError(f"need at least 6 samples, got {n_total}")

    prelim = None
    if isinstance(spec, Static):
        shots = _split_three(n_total)
        _require_positive(shots, "static")
        records = _measure_batch(rho_true, PAULI_AXES, shots, error_model, rng, 0)
    elif isinstance(spec, KnownBasis):
        shots = _split_three(n_total)
        _require_positive(shots, "known-basis")
        triplet = mub_triplet(eigendecompose(rho_true))
        records = _measure_batch(rho_true, triplet.axes, shots, error_model, rng, 0)
    elif isinstance(spec, (Adaptive, AdaptivePow, ReducedAdaptive)):
        if isinstance(spec, AdaptivePow):
            n_prelim = _round_half_up(n_total**spec.exponent)
        else:
            n_prelim = _round_half_up(spec.alpha * n_total)
        n_final = n_total - n_prelim
        shots1 = _split_three(n_prelim)
        _require_positive(shots1, "preliminary phase")
        records = _measure_batch(rho_true, PAULI_AXES, shots1, error_model, rng, 0)
        prelim_est = mle(records)
        prelim = prelim_est.rho
        triplet = mub_triplet(eigendecompose(prelim))
        if isinstance(spec, ReducedAdaptive):
            if n_final < 1:
                raise BudgetError("no samples left for the adapted setting")
            records = records + _measure_batch(
                rho_true, triplet.axes[:1], [n_final], error_model, rng, 3
            )
        else:
            shots2 = _split_three(n_final)
            _require_positive(shots2, "adapted phase")
            records = records + _measure_batch(
                rho_true, triplet.axes, shots2, error_model, rng, 3
            )
    else:
        raise TypeError(f"unknown protocol {spec!r}")

    est = mle(records)
    total = sum(rec.n_shots for rec in records)
    if total != n_total:
        raise AssertionError(f"budget leak: measured {total} of {n_total}")
    return RunResult(
        rho_hat=est.rho,
        rho_prelim=prelim,
        records=tuple(records),
        infidelity=1.0 - fidelity(est.rho, rho_true),
        total_shots=total,
    )
