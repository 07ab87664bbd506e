"""Observation assembly and scaled sensory deltas.

Turns raw environment output (actuator positions, heading, speed) into
the observation vector the learner sees: noisy actuator channels, exact
copies of those channels from ``delay`` steps ago, and heading encoded as
sin/cos.  Also computes the per-dimension scaled delta used as the
prediction target, as the mean per-step change over ``delta_window``
steps.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np


@dataclass
class RawObservation:
    """What an environment emits each step, before the sensor layer."""

    proprio: np.ndarray
    alpha: float | None = None  # heading, radians
    speed: float | None = None  # normalized to [0, 1]


@dataclass
class SensorConfig:
    proprio_noise_sigma: float = 0.05
    delay_steps: int = 0
    delta_window: int = 1
    # scale factors applied to the raw per-step mean change, per block
    proprio_scale: float = 1.0
    extero_scale: float = 10.0  # sin/cos/speed channels
    delta_scale: np.ndarray | None = None  # full per-channel override

    def __post_init__(self):
        if self.delay_steps < 0:
            raise ValueError("delay_steps must be >= 0")
        if self.delta_window < 1:
            raise ValueError("delta_window must be >= 1")
        if self.delta_scale is not None:
            self.delta_scale = np.asarray(self.delta_scale, dtype=float)
            if np.any(self.delta_scale <= 0):
                raise ValueError("delta_scale entries must be positive")


@dataclass
class SensorState:
    x: np.ndarray
    t: int


def observation_layout(proprio_dim: int, cfg: SensorConfig, has_orientation: bool) -> list[str]:
    """Channel names, in vector order; makes logs self-describing."""
    names = [f"proprio_{i}" for i in range(proprio_dim)]
    if cfg.delay_steps > 0:
        names += [f"proprio_{i}_delay{cfg.delay_steps}" for i in range(proprio_dim)]
    if has_orientation:
        names += ["sin_heading", "cos_heading", "speed"]
    return names


class Sensorium:
    """Per-agent observation builder with bounded history."""

    def __init__(self, proprio_dim: int, cfg: SensorConfig, has_orientation: bool = True):
        self.cfg = cfg
        self.proprio_dim = proprio_dim
        self.has_orientation = has_orientation
        self.dim = proprio_dim * (2 if cfg.delay_steps > 0 else 1) + (
            3 if has_orientation else 0
        )
        keep = max(cfg.delay_steps, cfg.delta_window, 25) + 2
        self._proprio: deque[np.ndarray] = deque(maxlen=keep)
        self._states: deque[SensorState] = deque(maxlen=keep)
        self._t = -1
        scale = cfg.delta_scale
        if scale is None:
            scale = np.full(self.dim, cfg.proprio_scale)
            if has_orientation:
                scale[-3:] = cfg.extero_scale
        if scale.shape != (self.dim,):
            raise ValueError(f"delta_scale must have {self.dim} entries")
        self.delta_scale = scale

    def reset(self) -> None:
        self._proprio.clear()
        self._states.clear()
        self._t = -1

    def observe(self, raw: RawObservation, rng: np.random.Generator) -> SensorState:
        """Assemble the next observation; delayed channels are exact copies."""
        cfg = self.cfg
        self._t += 1
        noisy = np.asarray(raw.proprio, dtype=float).copy()
        if cfg.proprio_noise_sigma > 0:
            noisy += rng.normal(0.0, cfg.proprio_noise_sigma, size=noisy.shape)
        parts = [noisy]
        if cfg.delay_steps > 0:
            k = len(self._proprio) - cfg.delay_steps
            parts.append(self._proprio[k].copy() if k >= 0 else np.zeros(self.proprio_dim))
        if self.has_orientation:
            parts.append(
                np.array([np.sin(raw.alpha), np.cos(raw.alpha), float(raw.speed)])
            )
        state = SensorState(x=np.concatenate(parts), t=self._t)
        self._proprio.append(noisy)
        self._states.append(state)
        return state

    def delta(self) -> np.ndarray | None:
        """Scaled mean per-step change over the configured window.

        Returns None until the history covers delta_window + 1 states;
        warm-up steps are excluded from surprise statistics upstream.
        """
        w = self.cfg.delta_window
        if len(self._states) < w + 1 or self._t < w + self.cfg.delay_steps:
            return None
        newest = self._states[-1].x
        oldest = self._states[-1 - w].x
        return self.delta_scale * (newest - oldest) / w

    def recent_x(self, back: int) -> np.ndarray | None:
        """Observation vector from ``back`` steps ago (0 = newest)."""
        if back >= len(self._states):
            return None
        return self._states[-1 - back].x

    def manifest(self) -> dict:
        return {
            "channels": observation_layout(self.proprio_dim, self.cfg, self.has_orientation),
            "delta_window": self.cfg.delta_window,
            "delay_steps": self.cfg.delay_steps,
            "proprio_noise_sigma": self.cfg.proprio_noise_sigma,
            "delta_scale": self.delta_scale.tolist(),
        }
