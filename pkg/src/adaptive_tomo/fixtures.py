"""Named reference states used by the CLI, docs and test suite.

Two states ship under the fixed names "eq7" and "eq10":

* ``eq7`` is the canonical pure target state with Bloch vector
  (0.5, 1/sqrt(2), 0.5); its state vector is
  (sqrt(3)/2, 1/(2 sqrt(3)) + i/sqrt(6)).
* ``eq10`` is a nearly pure benchmark state with Bloch vector
  (0.4020, 0.7248, 0.5422).  It has purity Tr(rho^2) ~= 0.991 and fidelity
  ~= 0.992 with ``eq7``, which the `fixtures` CLI command prints as a sanity
  check.
"""
from __future__ import annotations

import math

import numpy as np

from .states import bloch_to_density

EQ7_BLOCH = (0.5, 1.0 / math.sqrt(2.0), 0.5)
EQ7_KET = np.array(
    [math.sqrt(3.0) / 2.0, 1.0 / (2.0 * math.sqrt(3.0)) + 1j / math.sqrt(6.0)]
)

EQ10_BLOCH = (0.4020, 0.7248, 0.5422)

NAMED_STATES: dict[str, tuple[float, float, float]] = {
    "eq7": EQ7_BLOCH,
    "eq10": EQ10_BLOCH,
}


def named_state(name: str) -> np.ndarray:
    """Density matrix of a named reference state."""
    try:
        bloch = NAMED_STATES[name]
    except KeyError:
        raise KeyError(
            f"unknown state {name!r}; available: {sorted(NAMED_STATES)}"
        ) from None
    return bloch_to_density(bloch)
