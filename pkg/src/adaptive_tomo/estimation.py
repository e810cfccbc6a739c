"""State reconstruction from count records.

The maximum-likelihood estimate minimises a quadratic approximation to the
negative log-likelihood,

    l(rho) = sum_k N_k (Tr[rho E_k] - f_k)^2 / (ft_k (1 - ft_k)),

where E_k is the +1 projector of record k's *intended* axis, f_k = n_k / N_k
is the observed frequency, and ft_k = (n_k + 1/2) / (N_k + 1) is an add-half
hedged frequency used in the denominator only, keeping weights finite at
f_k in {0, 1}.  Estimators never see realized axes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InsufficientDataError, UnderdeterminedError
from .measurement import PAULI_AXES, CountRecord
from .states import bloch_to_density, density_to_bloch

BOUNDARY_TOL = 1e-9
_RADIUS_TOL = 1e-12


@dataclass(frozen=True)
class Estimate:
    """Reconstructed state, its objective value, and whether it sits on the
    surface of the Bloch ball (within 1e-9)."""

    rho: np.ndarray
    objective: float
    on_boundary: bool


def hedged_frequency(n_plus: int, n_shots: int) -> float:
    """Add-half smoothed frequency (n + 1/2) / (N + 1)."""
    return (n_plus + 0.5) / (n_shots + 1.0)


def merge_records(records: Iterable[CountRecord]) -> list[tuple[np.ndarray, int, int]]:
    """Sum counts of records sharing an identical intended axis.

    Returns (axis, total shots, total +1 counts) tuples in a canonical order
    (lexicographic in the axis components), so downstream arithmetic is
    bit-for-bit independent of record order.  Zero-shot records are dropped.
    """
    groups: dict[tuple[float, float, float], list[int]] = {}
    for rec in records:
        if rec.n_shots == 0:
            continue
        key = (float(rec.intended_axis[0]), float(rec.intended_axis[1]),
               float(rec.intended_axis[2]))
        tally = groups.setdefault(key, [0, 0])
        tally[0] += rec.n_shots
        tally[1] += rec.n_plus
    return [
        (np.array(key), shots, plus)
        for key, (shots, plus) in sorted(groups.items())
    ]


def linear_inversion(records: Sequence[CountRecord]) -> np.ndarray:
    """Raw Bloch vector r_k = 2 f_k - 1 from data on the three Pauli axes.

    No ball projection is applied: the result may have norm > 1.  Requires
    every record to lie on a Pauli axis and every axis to carry shots.
    """
    totals = {0: [0, 0], 1: [0, 0], 2: [0, 0]}
    for rec in records:
        matched = None
        for k, axis in enumerate(PAULI_AXES):
            if np.max(np.abs(rec.intended_axis - axis)) <= 1e-9:
                matched = k
                break
        if matched is None:
            raise InsufficientDataError(
                f"linear inversion needs Pauli axes only, got {rec.intended_axis}"
            )
        totals[matched][0] += rec.n_shots
        totals[matched][1] += rec.n_plus
    out = np.empty(3)
    for k in range(3):
        shots, plus = totals[k]
        if shots == 0:
            raise InsufficientDataError(f"no shots on Pauli axis {k}")
        out[k] = 2.0 * plus / shots - 1.0
    return out


def negative_loglikelihood(rho: np.ndarray, records: Sequence[CountRecord]) -> float:
    """Hedge-weighted quadratic log-likelihood of rho given the records."""
    r = density_to_bloch(rho)
    total = 0.0
    for axis, shots, plus in merge_records(records):
        f = plus / shots
        ft = hedged_frequency(plus, shots)
        predicted = 0.5 * (1.0 + float(np.dot(axis, r)))
        total += shots * (predicted - f) ** 2 / (ft * (1.0 - ft))
    return total


def _normal_equations(merged: Sequence[tuple[np.ndarray, int, int]]):
    # l(r) = (1/4) sum_k w_k (a_k . r - c_k)^2  =>  A r = b at the minimum.
    # A is symmetric 3x3, kept as its six independent entries.
    axx = axy = axz = ayy = ayz = azz = 0.0
    bx = by = bz = 0.0
    for axis, shots, plus in merged:
        ax, ay, az = float(axis[0]), float(axis[1]), float(axis[2])
        f = plus / shots
        ft = hedged_frequency(plus, shots)
        w = shots / (ft * (1.0 - ft))
        wc = w * (2.0 * f - 1.0)
        axx += w * ax * ax
        axy += w * ax * ay
        axz += w * ax * az
        ayy += w * ay * ay
        ayz += w * ay * az
        azz += w * az * az
        bx += wc * ax
        by += wc * ay
        bz += wc * az
    return (axx, axy, axz, ayy, ayz, azz), (bx, by, bz)


def _solve3_sym(a, b, shift: float = 0.0):
    # Cramer solve of (A + shift*I) r = b for symmetric 3x3 A.
    axx, axy, axz, ayy, ayz, azz = a
    axx += shift
    ayy += shift
    azz += shift
    c00 = ayy * azz - ayz * ayz
    c01 = axz * ayz - axy * azz
    c02 = axy * ayz - axz * ayy
    det = axx * c00 + axy * c01 + axz * c02
    c11 = axx * azz - axz * axz
    c12 = axy * axz - axx * ayz
    c22 = axx * ayy - axy * axy
    bx, by, bz = b
    return (
        (c00 * bx + c01 * by + c02 * bz) / det,
        (c01 * bx + c11 * by + c12 * bz) / det,
        (c02 * bx + c12 * by + c22 * bz) / det,
    )


def mle(records: Sequence[CountRecord]) -> Estimate:
    """Global minimiser of the quadratic log-likelihood over the Bloch ball.

    Solves the unconstrained weighted least-squares problem; if that solution
    is unphysical, finds the surface minimum by a monotone bisection on the
    Lagrange multiplier mu in r(mu) = (A + mu I)^-1 b.
    """
    merged = merge_records(records)
    if not merged:
        raise InsufficientDataError("no records with shots")
    _check_span(merged)
    a_mat, b_vec = _normal_equations(merged)
    r = _solve3_sym(a_mat, b_vec)
    norm = math.sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2])
    if norm > 1.0:
        r, norm = _boundary_solution(a_mat, b_vec)
    rho = bloch_to_density(r)
    objective = negative_loglikelihood(rho, records)
    return Estimate(rho, objective, abs(norm - 1.0) <= BOUNDARY_TOL)


def _check_span(merged) -> None:
    # Unweighted Gram determinant of the axis set; its square root is the
    # volume spanned, so near-zero means a rank-deficient axis set.
    gxx = gxy = gxz = gyy = gyz = gzz = 0.0
    for axis, _, _ in merged:
        ax, ay, az = float(axis[0]), float(axis[1]), float(axis[2])
        gxx += ax * ax
        gxy += ax * ay
        gxz += ax * az
        gyy += ay * ay
        gyz += ay * az
        gzz += az * az
    det = (
        gxx * (gyy * gzz - gyz * gyz)
        + gxy * (gxz * gyz - gxy * gzz)
        + gxz * (gxy * gyz - gxz * gyy)
    )
    if det > 1e-9:
        return
    axes = np.array([axis for axis, _, _ in merged])
    _, _, vt = np.linalg.svd(axes)
    null = vt[-1]
    raise UnderdeterminedError(
        f"measurement axes do not span Bloch space; "
        f"unconstrained direction ~ ({null[0]:.6f}, {null[1]:.6f}, {null[2]:.6f})",
        null,
    )


def _boundary_solution(a_mat, b_vec):
    def radius(mu: float):
        r = _solve3_sym(a_mat, b_vec, mu)
        return math.sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]), r

    lo = 0.0
    hi = max(a_mat[0] + a_mat[3] + a_mat[5], 1.0)
    while radius(hi)[0] > 1.0:
        hi *= 4.0
        if hi > 1e300:
            raise RuntimeError("boundary multiplier search diverged")
    best = radius(hi)
    for _ in range(500):
        mid = 0.5 * (lo + hi)
        norm, r = radius(mid)
        if abs(norm - 1.0) < _RADIUS_TOL:
            return r, norm
        if norm > 1.0:
            lo = mid
        else:
            hi = mid
            best = (norm, r)
    return best[1], best[0]
