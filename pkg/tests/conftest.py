import numpy as np
import pytest


def random_image(rng: np.random.Generator, h: int, w: int, c: int) -> np.ndarray:
    return rng.integers(0, 256, size=(h, w, c), dtype=np.uint8)


def distinct_pixel_image(h: int, w: int) -> np.ndarray:
    """3-channel image whose pixel values encode their flat raster index,
    so provenance of every output pixel can be decoded exactly."""
    if h * w > 256**3:
        raise ValueError("too many pixels to keep tuples distinct")
    idx = np.arange(h * w)
    img = np.stack([idx % 256, (idx // 256) % 256, (idx // 65536) % 256], axis=1)
    return img.astype(np.uint8).reshape(h, w, 3)


def decode_positions(img: np.ndarray) -> np.ndarray:
    """Flat source index of each pixel of a distinct_pixel_image output."""
    flat = img.reshape(-1, 3).astype(np.int64)
    return flat[:, 0] + 256 * flat[:, 1] + 65536 * flat[:, 2]


def pixel_multiset(img: np.ndarray):
    return sorted(map(tuple, img.reshape(-1, img.shape[2]).tolist()))


@pytest.fixture
def nprng() -> np.random.Generator:
    return np.random.default_rng(20240817)
