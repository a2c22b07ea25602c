"""8-bit interleaved raster images.

The whole engine works on numpy arrays of shape (height, width,
channels), dtype uint8, C-contiguous, with channels 1 or 3.  ImageBuffer
is the validated wrapper used at API boundaries; internal code passes the
bare arrays around.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def as_image(arr: np.ndarray) -> np.ndarray:
    """Validate and canonicalize an image array.

    Accepts (H, W) as shorthand for single-channel.  Returns a
    C-contiguous uint8 array of shape (H, W, C) with C in {1, 3}.
    """
    a = np.asarray(arr)
    if a.dtype != np.uint8:
        raise ValueError(f"image dtype must be uint8, got {a.dtype}")
    if a.ndim == 2:
        a = a[:, :, np.newaxis]
    if a.ndim != 3:
        raise ValueError(f"image must have shape (H, W, C), got {a.shape}")
    h, w, c = a.shape
    if h < 1 or w < 1:
        raise ValueError(f"image dimensions must be >= 1, got {h}x{w}")
    if c not in (1, 3):
        raise ValueError(f"channels must be 1 or 3, got {c}")
    return np.ascontiguousarray(a)


@dataclass(frozen=True)
class ImageBuffer:
    """Validated image: row-major interleaved 8-bit samples."""

    width: int
    height: int
    channels: int
    data: np.ndarray

    def __post_init__(self):
        arr = as_image(self.data)
        if arr.shape != (self.height, self.width, self.channels):
            raise ValueError(
                f"data shape {arr.shape} does not match "
                f"{self.height}x{self.width}x{self.channels}"
            )
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "ImageBuffer":
        a = as_image(arr)
        h, w, c = a.shape
        return cls(width=w, height=h, channels=c, data=a)

    def to_array(self) -> np.ndarray:
        return self.data
