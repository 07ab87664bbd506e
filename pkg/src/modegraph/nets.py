"""Single-layer network substrate shared by all learned models.

Two training rules live here: a delta rule on squared error with L1 weight
sparsity (tanh head, used by behavior and transition-effect predictors)
and a class-balanced cross-entropy rule (sigmoid head, used by transition
probability predictors).  Each net carries a FIFO replay buffer; every
online update replays a configurable number of stored pairs.
"""

from __future__ import annotations

import numpy as np

from . import _kernels as K

HEAD_TANH = K.HEAD_TANH
HEAD_SIGMOID = K.HEAD_SIGMOID

INIT_SCALE = 0.1  # uniform weight init range; keeps fresh predictions near zero


class ReplayBuffer:
    """Fixed-capacity FIFO of (input, target) pairs with uniform sampling.

    Storage is two preallocated arrays indexed by a ring head, so pushes
    and uniform draws stay O(1) regardless of capacity.  Class counts of
    binary targets are maintained for the balanced cross-entropy rule.
    """

    def __init__(self, in_dim: int, out_dim: int, capacity: int = 10000):
        if capacity <= 0:
            raise ValueError("capacity must be positive")
        self.capacity = capacity
        self.inputs = np.zeros((capacity, in_dim))
        self.targets = np.zeros((capacity, out_dim))
        self.size = 0
        self._head = 0  # next write slot
        self.n_pos = 0  # count of targets[0] == 1 among stored pairs

    def __len__(self) -> int:
        return self.size

    def push(self, x: np.ndarray, target: np.ndarray) -> None:
        if self.size == self.capacity:
            # evicting oldest == the slot we are about to overwrite
            self.n_pos -= int(self.targets[self._head, 0] == 1.0)
        else:
            self.size += 1
        self.inputs[self._head] = x
        self.targets[self._head] = target
        self.n_pos += int(target[0] == 1.0)
        self._head = (self._head + 1) % self.capacity

    def sample_indices(self, k: int, rng: np.random.Generator) -> np.ndarray:
        """Uniform draw of min(k, size) stored-slot indices (with replacement)."""
        if k <= 0 or self.size == 0:
            return np.empty(0, dtype=np.intp)
        return rng.integers(0, self.size, size=min(k, self.size))

    def sample(self, k: int, rng: np.random.Generator):
        idx = self.sample_indices(k, rng)
        return self.inputs[idx], self.targets[idx]


class LinearNet:
    """Affine map + output nonlinearity with online training and replay."""

    def __init__(
        self,
        in_dim: int,
        out_dim: int,
        head: int,
        lr: float,
        l1: float = 0.0,
        capacity: int = 10000,
        rng: np.random.Generator | None = None,
    ):
        if head not in (HEAD_TANH, HEAD_SIGMOID):
            raise ValueError(f"unknown head {head}")
        self.in_dim = in_dim
        self.out_dim = out_dim
        self.head = head
        self.lr = lr
        self.l1 = l1
        if rng is None:
            self.W = np.zeros((out_dim, in_dim))
        else:
            self.W = rng.uniform(-INIT_SCALE, INIT_SCALE, size=(out_dim, in_dim))
        self.b = np.zeros(out_dim)
        self.buffer = ReplayBuffer(in_dim, out_dim, capacity)

    def forward(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.in_dim,):
            raise ValueError(f"expected input of shape ({self.in_dim},), got {x.shape}")
        return K.lin_forward(self.W, self.b, x, self.head)

    # -- regression rule (tanh head) ------------------------------------

    def train_regression(
        self,
        x: np.ndarray,
        target: np.ndarray,
        extra_draws: int,
        rng: np.random.Generator,
    ) -> None:
        """One gradient step on (x, target), then replay extra_draws pairs."""
        if self.head != HEAD_TANH:
            raise ValueError("regression training requires a tanh head")
        x = np.asarray(x, dtype=float)
        target = np.asarray(target, dtype=float)
        if target.shape != (self.out_dim,):
            raise ValueError("target dimension mismatch")
        K.regression_step(self.W, self.b, x, target, self.lr, self.l1)
        self.buffer.push(x, target)
        for i in self.buffer.sample_indices(extra_draws, rng):
            K.regression_step(
                self.W, self.b, self.buffer.inputs[i], self.buffer.targets[i], self.lr, self.l1
            )

    # -- probability rule (sigmoid head) --------------------------------

    def _class_weights(self) -> tuple[float, float]:
        """Inverse-class-frequency weights over the buffer, mean 1.

        With counts (n0, n1) the weight of class c is proportional to
        1/n_c, renormalized so (w0 + w1)/2 = 1.  If either class is absent
        both weights are 1.
        """
        n1 = self.buffer.n_pos
        n0 = self.buffer.size - n1
        if n0 == 0 or n1 == 0:
            return 1.0, 1.0
        h = 2.0 / (1.0 / n0 + 1.0 / n1)
        return h / n0, h / n1

    def train_probability(
        self,
        x: np.ndarray,
        target: float,
        extra_draws: int,
        rng: np.random.Generator,
    ) -> None:
        """One balanced cross-entropy step on (x, target in {0,1}) + replay."""
        if self.head != HEAD_SIGMOID or self.out_dim != 1:
            raise ValueError("probability training requires a 1-output sigmoid head")
        if target not in (0, 1):
            raise ValueError(f"target must be 0 or 1, got {target!r}")
        x = np.asarray(x, dtype=float)
        w0, w1 = self._class_weights()
        K.probability_step(
            self.W, self.b, x, float(target), self.lr, w1 if target == 1 else w0
        )
        self.buffer.push(x, np.array([float(target)]))
        w0, w1 = self._class_weights()
        for i in self.buffer.sample_indices(extra_draws, rng):
            t = self.buffer.targets[i, 0]
            K.probability_step(
                self.W, self.b, self.buffer.inputs[i], t, self.lr, w1 if t == 1.0 else w0
            )

    # -- analytic gradients (shared with the finite-difference tests) ----

    def loss_regression(self, x: np.ndarray, target: np.ndarray) -> float:
        out = K.lin_forward(self.W, self.b, x, HEAD_TANH)
        return 0.5 * float(np.sum((out - target) ** 2)) + self.l1 * float(
            np.sum(np.abs(self.W))
        )

    def grad_regression(self, x: np.ndarray, target: np.ndarray):
        out = K.lin_forward(self.W, self.b, x, HEAD_TANH)
        d = (out - target) * (1.0 - out * out)
        return np.outer(d, x) + self.l1 * np.sign(self.W), d

    def loss_probability(self, x: np.ndarray, target: float, cw: float) -> float:
        p = float(K.lin_forward(self.W, self.b, x, HEAD_SIGMOID)[0])
        if target == 1:
            return -cw * np.log(p)
        return -cw * np.log(1.0 - p)

    def grad_probability(self, x: np.ndarray, target: float, cw: float):
        p = K.lin_forward(self.W, self.b, x, HEAD_SIGMOID)
        d = cw * (p - target)
        return np.outer(d, x), d

    # -- snapshot ---------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "in_dim": self.in_dim,
            "out_dim": self.out_dim,
            "head": "tanh" if self.head == HEAD_TANH else "sigmoid",
            "lr": self.lr,
            "l1": self.l1,
            "W": self.W.tolist(),
            "b": self.b.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict, capacity: int = 10000) -> "LinearNet":
        head = HEAD_TANH if d["head"] == "tanh" else HEAD_SIGMOID
        net = cls(d["in_dim"], d["out_dim"], head, d["lr"], d.get("l1", 0.0), capacity)
        net.W = np.asarray(d["W"], dtype=float)
        net.b = np.asarray(d["b"], dtype=float)
        return net
