"""Self-organizing exploration controller.

A single-layer closed-loop controller whose weights follow the
differential extrinsic plasticity (DEP) rule: correlate the inferred
motor-velocity (inverse model applied to the newest sensor derivative)
with the sensor derivative one lag earlier, with exponential damping and
a norm constraint.  A slow bias scheduler periodically kicks the least
plastic motor out of its current attractor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K

NORM_GLOBAL = "global"
NORM_INDIVIDUAL = "individual"


def normalize_weights(W: np.ndarray, kappa: float, mode: str, p: float = 1e-12) -> np.ndarray:
    """Rescale W so its Frobenius norm (global) or each row norm equals ~kappa.

    The p term regularizes the zero-norm singularity: W = 0 stays 0.
    Operates in place and returns W.
    """
    if mode == NORM_GLOBAL:
        W *= kappa / (np.linalg.norm(W) + p)
    elif mode == NORM_INDIVIDUAL:
        norms = np.linalg.norm(W, axis=1, keepdims=True)
        W *= kappa / (norms + p)
    else:
        raise ValueError(f"unknown normalization mode {mode!r}")
    return W


@dataclass
class DepConfig:
    eps_w: float = 0.1
    kappa: float = 1.5
    norm_mode: str = NORM_GLOBAL
    reg_p: float = 1e-12
    phi: int = 1  # sensor-derivative lag of the correlation
    tau_bias: int = 5000  # half-period of the bias schedule, in steps
    bias_mag: float = 1.5


class DepController:
    """Closed-loop motor generator with fast correlational weight dynamics.

    ``input_idx`` selects which observation channels the controller reads
    (typically the proprioceptive block).  ``bias_groups`` maps each bias
    unit to the motor rows it drives; default is one unit per motor.
    """

    def __init__(
        self,
        n_motors: int,
        input_idx: np.ndarray,
        M: np.ndarray,
        cfg: DepConfig,
        bias_groups: list[list[int]] | None = None,
    ):
        self.cfg = cfg
        self.n_motors = n_motors
        self.input_idx = np.asarray(input_idx, dtype=np.intp)
        n_in = len(self.input_idx)
        M = np.asarray(M, dtype=float)
        if M.shape != (n_motors, n_in):
            raise ValueError(f"inverse model must be {n_motors}x{n_in}, got {M.shape}")
        self.M = M
        self.W = np.zeros((n_motors, n_in))
        self.h = np.zeros(n_motors)
        if bias_groups is None:
            bias_groups = [[i] for i in range(n_motors)]
        self.bias_groups = bias_groups
        self.change_accum = np.zeros(len(bias_groups))
        self._row_change = np.zeros(n_motors)
        self._steps = 0
        self._bias_active = False

    # -- acting ----------------------------------------------------------

    def act(self, x: np.ndarray) -> np.ndarray:
        """Motor command tanh(W x_sel + h); pure."""
        return np.tanh(self.W @ x[self.input_idx] + self.h)

    # -- learning ----------------------------------------------------------

    def learn(self, x_now: np.ndarray, x_prev: np.ndarray, x_prev2: np.ndarray) -> None:
        """One DEP step from three consecutive observations.

        Derivatives are one-step backward differences of the (noisy)
        selected channels; no smoothing, so perturbations get amplified.
        """
        sel = self.input_idx
        dx_now = x_now[sel] - x_prev[sel]
        dx_prev = x_prev[sel] - x_prev2[sel]
        self._row_change[:] = 0.0
        K.dep_update(self.W, self.M, dx_now, dx_prev, self.cfg.eps_w, self._row_change)
        for g, rows in enumerate(self.bias_groups):
            self.change_accum[g] += self._row_change[rows].sum()
        normalize_weights(self.W, self.cfg.kappa, self.cfg.norm_mode, self.cfg.reg_p)

    # -- bias schedule -----------------------------------------------------

    def tick_bias(self, rng: np.random.Generator) -> None:
        """Advance the bias schedule by one step.

        Phases of tau_bias steps alternate: after an inactive phase the
        least plastic group (smallest accumulated |dW|, lowest index on
        ties) gets its bias set to +/-bias_mag; after an active phase all
        biases drop back to zero.
        """
        self._steps += 1
        if self.cfg.tau_bias <= 0 or self._steps % self.cfg.tau_bias != 0:
            return
        if self._bias_active:
            self.h[:] = 0.0
            self._bias_active = False
        else:
            g = int(np.argmin(self.change_accum))
            sign = 1.0 if rng.random() < 0.5 else -1.0
            self.h[:] = 0.0
            self.h[self.bias_groups[g]] = sign * self.cfg.bias_mag
            self.change_accum[:] = 0.0
            self._bias_active = True
