"""Projective qubit measurements: Born probabilities, binomial photon
counting, and the alignment-error models that perturb measurement axes.

An *experiment* is one simulated run of a tomography protocol; a *setting* is
one measurement axis within it, applied to a batch of identically prepared
samples.  The three error models differ in how often a fresh misalignment is
drawn:

* ``PerSettingError`` (model 1): every setting of every experiment gets an
  independent mount-angle error, Normal(0, E^2).
* ``PerExperimentError`` (model 2): one mount-angle error draw per experiment,
  shared by all settings in that experiment.
* ``FixedError`` (model 3): a deterministic mount-angle error E, identical in
  every experiment, tilting each axis about the component of a fixed rotation
  axis perpendicular to it.

A mount-angle error of ``delta`` radians tilts the measured Bloch axis by
``MOUNT_TO_BLOCH_ANGLE * delta``: the wave-plate mount angle doubles into the
polarization-plane angle, which doubles again on the Bloch sphere.  The factor
lives in one constant so the mapping can be varied in sensitivity studies.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import InvalidStateError
from .states import density_to_bloch

# Bloch-sphere rotation angle produced per radian of wave-plate mount error.
MOUNT_TO_BLOCH_ANGLE = 4.0

PAULI_AXES = (
    np.array([1.0, 0.0, 0.0]),
    np.array([0.0, 1.0, 0.0]),
    np.array([0.0, 0.0, 1.0]),
)

# Leading stream labels, so alignment draws and photon counts never collide.
_ALIGN_STREAM = 1
_COUNT_STREAM = 2

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngContext:
    """Reproducible random stream keyed by a master seed plus integer labels.

    Identical (seed, labels) always yield identical draws; distinct labels
    yield statistically independent streams.  There is no global RNG state:
    parallel experiments must use distinct labels.
    """

    seed: int
    labels: tuple[int, ...] = ()

    def child(self, *labels: int) -> "RngContext":
        return RngContext(self.seed, self.labels + tuple(int(x) for x in labels))

    def generator(self) -> np.random.Generator:
        entropy = [self.seed & _MASK64]
        entropy.extend(label & _MASK64 for label in self.labels)
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


@dataclass(frozen=True)
class NoError:
    """Perfectly aligned measurements."""


@dataclass(frozen=True)
class PerSettingError:
    """Independent Normal(0, magnitude^2) mount error per setting (model 1)."""

    magnitude: float

    def __post_init__(self):
        if self.magnitude < 0:
            raise InvalidStateError("error magnitude must be >= 0")


@dataclass(frozen=True)
class PerExperimentError:
    """One Normal(0, magnitude^2) mount error per experiment (model 2)."""

    magnitude: float

    def __post_init__(self):
        if self.magnitude < 0:
            raise InvalidStateError("error magnitude must be >= 0")


@dataclass(frozen=True)
class FixedError:
    """Deterministic mount error, identical across experiments (model 3)."""

    magnitude: float
    rotation_axis: tuple[float, float, float] = (2.0 / math.sqrt(5.0), 1.0 / math.sqrt(5.0), 0.0)

    def __post_init__(self):
        if self.magnitude < 0:
            raise InvalidStateError("error magnitude must be >= 0")
        norm = math.sqrt(sum(x * x for x in self.rotation_axis))
        if abs(norm - 1.0) > 1e-9:
            raise InvalidStateError("rotation axis must be a unit vector")


ErrorModel = Union[NoError, PerSettingError, PerExperimentError, FixedError]


@dataclass(frozen=True)
class CountRecord:
    """Counts for one measurement setting.

    ``realized_axis`` is the axis actually measured after alignment error;
    estimators must only ever consume ``intended_axis`` (the systematic error
    is invisible to them, which is the point).
    """

    intended_axis: np.ndarray
    realized_axis: np.ndarray
    n_shots: int
    n_plus: int

    def __post_init__(self):
        if not 0 <= self.n_plus <= self.n_shots:
            raise InvalidStateError(
                f"counts {self.n_plus} outside [0, {self.n_shots}]"
            )
        ax = self.realized_axis
        norm = math.sqrt(float(ax[0]) ** 2 + float(ax[1]) ** 2 + float(ax[2]) ** 2)
        if abs(norm - 1.0) > 1e-9:
            raise InvalidStateError("realized axis is not a unit vector")

    @property
    def frequency(self) -> float:
        return self.n_plus / self.n_shots


def born_probability(rho: np.ndarray, axis: Sequence[float]) -> float:
    """Probability of the +1 outcome when measuring along a unit Bloch axis."""
    r = density_to_bloch(rho)
    dot = float(axis[0]) * r[0] + float(axis[1]) * r[1] + float(axis[2]) * r[2]
    p = 0.5 * (1.0 + dot)
    return min(max(p, 0.0), 1.0)


def sample_counts(p: float, n: int, rng: RngContext) -> int:
    """Exact Binomial(n, p) draw from the given stream."""
    if not -1e-12 <= p <= 1.0 + 1e-12:
        raise InvalidStateError(f"probability {p} outside [0, 1]")
    if n < 0:
        raise InvalidStateError(f"shot count {n} negative")
    p = min(max(p, 0.0), 1.0)
    return int(rng.generator().binomial(n, p))


def _perp_basis(axis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Deterministic orthonormal basis of the plane perpendicular to axis.
    ax, ay, az = float(axis[0]), float(axis[1]), float(axis[2])
    k = min(range(3), key=lambda i: abs((ax, ay, az)[i]))
    e = [0.0, 0.0, 0.0]
    e[k] = 1.0
    d = (ax, ay, az)[k]
    e1 = (e[0] - d * ax, e[1] - d * ay, e[2] - d * az)
    n = math.sqrt(e1[0] ** 2 + e1[1] ** 2 + e1[2] ** 2)
    e1 = (e1[0] / n, e1[1] / n, e1[2] / n)
    e2 = _cross((ax, ay, az), e1)
    return np.array(e1), np.array(e2)


def _cross(a, b) -> tuple[float, float, float]:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _rotate(axis: np.ndarray, rot_axis, angle: float) -> np.ndarray:
    # Rodrigues rotation for rot_axis perpendicular to axis.
    ax, ay, az = float(axis[0]), float(axis[1]), float(axis[2])
    ux, uy, uz = float(rot_axis[0]), float(rot_axis[1]), float(rot_axis[2])
    c, s = math.cos(angle), math.sin(angle)
    cx, cy, cz = _cross((ux, uy, uz), (ax, ay, az))
    ox, oy, oz = ax * c + cx * s, ay * c + cy * s, az * c + cz * s
    n = math.sqrt(ox * ox + oy * oy + oz * oz)
    return np.array([ox / n, oy / n, oz / n])


def _realized_axis(
    intended: np.ndarray,
    model: ErrorModel,
    experiment_index: int,
    setting_index: int,
    rng: RngContext,
) -> np.ndarray:
    if isinstance(model, NoError) or model.magnitude == 0.0:
        return intended
    if isinstance(model, FixedError):
        wx, wy, wz = model.rotation_axis
        ax, ay, az = float(intended[0]), float(intended[1]), float(intended[2])
        d = wx * ax + wy * ay + wz * az
        px, py, pz = wx - d * ax, wy - d * ay, wz - d * az
        norm = math.sqrt(px * px + py * py + pz * pz)
        if norm < 1e-12:
            # Rotation about the measured axis itself is unobservable.
            return intended
        return _rotate(
            intended,
            (px / norm, py / norm, pz / norm),
            MOUNT_TO_BLOCH_ANGLE * model.magnitude,
        )
    if isinstance(model, PerSettingError):
        gen = rng.child(_ALIGN_STREAM, experiment_index, setting_index).generator()
    elif isinstance(model, PerExperimentError):
        gen = rng.child(_ALIGN_STREAM, experiment_index).generator()
    else:
        raise TypeError(f"unknown error model {model!r}")
    delta = gen.standard_normal() * model.magnitude
    chi = gen.uniform(0.0, 2.0 * math.pi)
    e1, e2 = _perp_basis(intended)
    rot_axis = e1 * math.cos(chi) + e2 * math.sin(chi)
    return _rotate(intended, rot_axis, MOUNT_TO_BLOCH_ANGLE * delta)


def perturb_axes(
    intended: Sequence[np.ndarray],
    model: ErrorModel,
    experiment_index: int,
    rng: RngContext,
    setting_offset: int = 0,
) -> list[np.ndarray]:
    """Realized measurement axes for a batch of intended axes.

    ``setting_offset`` numbers the settings globally within an experiment so
    that, e.g., the second phase of an adaptive run draws fresh per-setting
    errors rather than replaying the first phase's.
    """
    return [
        _realized_axis(np.asarray(a, dtype=float), model, experiment_index,
                       setting_offset + i, rng)
        for i, a in enumerate(intended)
    ]


def measure_setting(
    rho: np.ndarray,
    intended: np.ndarray,
    n_shots: int,
    model: ErrorModel,
    rng: RngContext,
    experiment_index: int = 0,
    setting_index: int = 0,
) -> CountRecord:
    """Simulate one measurement setting: perturb the axis, then count photons."""
    intended = np.asarray(intended, dtype=float)
    realized = _realized_axis(intended, model, experiment_index, setting_index, rng)
    p = born_probability(rho, realized)
    n_plus = sample_counts(
        p, n_shots, rng.child(_COUNT_STREAM, experiment_index, setting_index)
    )
    return CountRecord(intended, realized, n_shots, n_plus)
