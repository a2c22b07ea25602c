"""Additive gaussian-noise corruption, severity-parameterized.

Matches the widely used corruption-benchmark recipe for standard-size
images: the image is scaled to [0, 1], i.i.d. N(0, sigma^2) noise is
added to every sample of every channel, and the result is clipped back
to [0, 1] and re-quantized.  Severity selects sigma from a fixed table.

Noise values come from rng.normal_samples (Box-Muller over the SplitMix64
stream seeded directly with the per-image seed), consumed flat in
(row, column, channel) order.  Quantization is round-half-away-from-zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

import numpy as np

from . import rng
from .image import as_image

SIGMA = {1: 0.08, 2: 0.12, 3: 0.18, 4: 0.26, 5: 0.38}


def severity_sigma(level: int) -> float:
    """Noise standard deviation (unit scale) for a severity level."""
    if isinstance(level, bool) or level not in SIGMA:
        raise ValueError(f"severity must be an integer in 1..5, got {level!r}")
    return SIGMA[level]


def gaussian_noise(img: np.ndarray, level: int, seed: int) -> np.ndarray:
    a = as_image(img)
    sigma = severity_sigma(level)
    z = rng.normal_samples(seed, a.size).reshape(a.shape)
    y = np.clip(a.astype(np.float64) / 255.0 + sigma * z, 0.0, 1.0) * 255.0
    return np.floor(y + 0.5).astype(np.uint8)


@dataclass(frozen=True)
class GaussianNoiseSpec:
    """Corruption counterpart of TransformSpec for job configs/manifests."""

    severity: int

    def __post_init__(self):
        severity_sigma(self.severity)

    def to_mapping(self) -> dict[str, Any]:
        return {"noise": "gaussian", "severity": self.severity}

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Any]) -> "GaussianNoiseSpec":
        m = dict(mapping)
        noise = m.pop("noise", None)
        if noise != "gaussian":
            raise ValueError(f"unknown noise kind {noise!r}; only 'gaussian' is supported")
        unknown = set(m) - {"severity"}
        if unknown:
            raise ValueError(f"unknown noise field(s): {', '.join(sorted(unknown))}")
        if "severity" not in m:
            raise ValueError("noise spec is missing 'severity'")
        return cls(severity=m["severity"])
