"""Micro-benchmark comparing the compiled kernels with the pure fallback.

Times the per-image hot paths (whole-image shuffle, tiled shuffle,
superpixel segmentation, content digest) on a synthetic RGB image and
prints both backends side by side.
"""

from __future__ import annotations

import time

import numpy as np

from . import _backend, _kernels_py, rng, segmentation, transforms
from .pipeline import pixel_digest


def _timeit(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _swap_backend(module):
    saved = (_backend._impl, _backend.fisher_yates, _backend.fnv1a64, _backend.slic_iterate)
    _backend._impl = module
    _backend.fisher_yates = module.fisher_yates
    _backend.fnv1a64 = module.fnv1a64
    _backend.slic_iterate = module.slic_iterate
    return saved


def _restore_backend(saved) -> None:
    _backend._impl, _backend.fisher_yates, _backend.fnv1a64, _backend.slic_iterate = saved


def available_backends() -> list:
    mods = []
    try:
        from . import _kernels

        mods.append(_kernels)
    except ImportError:
        pass
    mods.append(_kernels_py)
    return mods


def run_benchmark(size: int = 224, repeat: int = 5) -> dict[str, dict[str, float]]:
    img = (rng.stream_words(7, size * size * 3) & np.uint64(0xFF)).astype(np.uint8)
    img = img.reshape(size, size, 3)
    cases = {
        "full_random_shuffle p=1": lambda: transforms.full_random_shuffle(img, 1.0, 42),
        "within_grid_shuffle 14/0.5": lambda: transforms.within_grid_shuffle(img, 14, 0.5, 42),
        "grid_shuffle 112": lambda: transforms.grid_shuffle(img, 112, 42),
        "superpixel_segment 64": lambda: segmentation.superpixel_segment(img, 64),
        "pixel_digest": lambda: pixel_digest(img),
    }
    results: dict[str, dict[str, float]] = {}
    for module in available_backends():
        saved = _swap_backend(module)
        try:
            results[module.NAME] = {name: _timeit(fn, repeat) for name, fn in cases.items()}
        finally:
            _restore_backend(saved)

    names = list(results)
    width = max(len(c) for c in cases)
    header = f"{'case':<{width}}  " + "  ".join(f"{n:>12}" for n in names)
    if len(names) == 2:
        header += f"  {'speedup':>9}"
    print(f"image {size}x{size}x3, best of {repeat}")
    print(header)
    for case in cases:
        row = f"{case:<{width}}  " + "  ".join(f"{results[n][case] * 1e3:9.2f} ms" for n in names)
        if len(names) == 2:
            a, b = results[names[0]][case], results[names[1]][case]
            row += f"  {b / a:8.1f}x"
        print(row)
    return results
