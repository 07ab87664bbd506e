"""Pure-numpy reference implementations of the hot numeric kernels.

Every function here has a signature-compatible compiled twin in the
optional Cython extension (see ``_ckernels.pyx``).  The pure versions are
the semantic reference: the compiled ones must agree to float64 rounding.
All updates are in-place on the weight/bias arrays so callers never need
to know which backend they got.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

HEAD_TANH = 0
HEAD_SIGMOID = 1


def lin_forward(W: np.ndarray, b: np.ndarray, x: np.ndarray, head: int) -> np.ndarray:
    z = W @ x + b
    if head == HEAD_TANH:
        return np.tanh(z)
    return 1.0 / (1.0 + np.exp(-z))


def regression_step(
    W: np.ndarray,
    b: np.ndarray,
    x: np.ndarray,
    target: np.ndarray,
    lr: float,
    l1: float,
) -> None:
    """One delta-rule step on 0.5*||tanh(Wx+b) - target||^2 + l1*sum|W|."""
    out = np.tanh(W @ x + b)
    d = (out - target) * (1.0 - out * out)
    if l1 > 0.0:
        W -= lr * (np.outer(d, x) + l1 * np.sign(W))
    else:
        W -= lr * np.outer(d, x)
    b -= lr * d


def probability_step(
    W: np.ndarray,
    b: np.ndarray,
    x: np.ndarray,
    target: float,
    lr: float,
    class_weight: float,
) -> None:
    """One step on class-weighted cross-entropy for a 1-output sigmoid net."""
    z = W @ x + b
    p = 1.0 / (1.0 + np.exp(-z))
    d = class_weight * (p - target)
    W -= lr * np.outer(d, x)
    b -= lr * d


def dep_update(
    W: np.ndarray,
    M: np.ndarray,
    dx_now: np.ndarray,
    dx_prev: np.ndarray,
    eps: float,
    row_change: np.ndarray,
) -> None:
    """Anti-Hebbian-damped correlation update of the explorer weights.

    W += eps * (outer(M @ dx_now, dx_prev) - W), accumulating the absolute
    per-row weight change into ``row_change`` (used by the bias scheduler
    to find the least active motor).  Normalization is a separate step.
    """
    ydot = M @ dx_now
    dW = eps * (np.outer(ydot, dx_prev) - W)
    W += dW
    row_change += np.abs(dW).sum(axis=1)


def rollout_path(
    W: np.ndarray,
    b: np.ndarray,
    x0: np.ndarray,
    n_steps: int,
    motor_dim: int,
    inv_scale: np.ndarray,
    out: np.ndarray,
) -> None:
    """Iterate a tanh predictor, accumulating its de-scaled delta prediction.

    Fills ``out`` (shape [n_steps+1, dim]) with the predicted state path
    starting at x0.  The net maps state -> (motor, scaled-delta); only the
    delta block drives the path.
    """
    x = x0.copy()
    out[0] = x
    for k in range(1, n_steps + 1):
        pred = np.tanh(W @ x + b)
        x = x + pred[motor_dim:] * inv_scale
        out[k] = x
