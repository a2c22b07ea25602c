"""Block-level shuffle transforms.

All shuffles move whole pixel tuples (an RGB triple never splits across
channels) and permute values in place of the selected positions, so the
pixel-tuple multiset of the image is always preserved.  Probabilistic
shuffles follow select-then-permute semantics: positions are kept by an
independent Bernoulli draw with probability p, then the kept values are
permuted among themselves.

Sub-stream layout (see rng.derive_substream):
  - selection draws use substream (seed, 1), the permutation (seed, 2)
  - per-tile streams are (seed, row, col)
  - the two stages of the local-structure composite are (seed, 1) for the
    within-tile pass and (seed, 2) for the tile permutation
"""

from __future__ import annotations

import numpy as np

from . import rng
from .grid import tile_partition
from .image import as_image


def _permute_selected(flat: np.ndarray, positions: np.ndarray, seed: int, p: float) -> None:
    """Bernoulli-select among `positions` (by their order) and permute the
    selected rows of `flat` among themselves, in place."""
    sel_local = rng.bernoulli_select(rng.derive_substream(seed, 1), len(positions), p)
    if sel_local.size < 2:
        return
    sel = positions[sel_local]
    perm = rng.seeded_permutation(rng.derive_substream(seed, 2), sel_local.size)
    flat[sel] = flat[sel[perm]]


def full_random_shuffle(img: np.ndarray, p: float, seed: int) -> np.ndarray:
    """Permute a p-fraction of all pixels among themselves."""
    a = as_image(img)
    h, w, c = a.shape
    out = a.copy()
    _permute_selected(out.reshape(-1, c), np.arange(h * w), seed, p)
    return out


def grid_shuffle(img: np.ndarray, grid_size: int, seed: int) -> np.ndarray:
    """Permute whole tiles; content inside each tile is untouched.

    Remainder tiles (absorbed right/bottom strips) only trade places with
    tiles of their own shape, so the move is always lossless.  Shape
    classes are ordered by first appearance in raster order and class k
    draws its permutation from substream (seed, k).
    """
    a = as_image(img)
    h, w, _ = a.shape
    g = tile_partition(w, h, grid_size)
    classes: dict[tuple[int, int], list[tuple[int, int, int, int]]] = {}
    for _, _, x0, y0, tw, th in g.tiles():
        classes.setdefault((th, tw), []).append((x0, y0, tw, th))
    out = a.copy()
    for k, members in enumerate(classes.values()):
        perm = rng.seeded_permutation(rng.derive_substream(seed, k), len(members))
        for t, (x0, y0, tw, th) in enumerate(members):
            sx, sy, _, _ = members[perm[t]]
            out[y0 : y0 + th, x0 : x0 + tw] = a[sy : sy + th, sx : sx + tw]
    return out


def within_grid_shuffle(img: np.ndarray, grid_size: int, p: float, seed: int) -> np.ndarray:
    """Tiles stay put; pixels shuffle independently inside each tile."""
    a = as_image(img)
    h, w, c = a.shape
    g = tile_partition(w, h, grid_size)
    out = a.copy()
    flat = out.reshape(-1, c)
    for r, col, x0, y0, tw, th in g.tiles():
        ty, tx = np.divmod(np.arange(tw * th), tw)
        positions = (y0 + ty) * w + (x0 + tx)
        _permute_selected(flat, positions, rng.derive_substream(seed, r, col), p)
    return out


def local_structure_shuffle(
    img: np.ndarray, grid_size: int, p: float, seed: int, swap: bool = True
) -> np.ndarray:
    """Within-tile pixel shuffle followed by a tile permutation.

    With swap disabled the tile permutation stage is skipped and only the
    within-tile shuffle runs.
    """
    stage1 = within_grid_shuffle(img, grid_size, p, rng.derive_substream(seed, 1))
    if not swap:
        return stage1
    return grid_shuffle(stage1, grid_size, rng.derive_substream(seed, 2))


def color_flatten(img: np.ndarray) -> np.ndarray:
    """Stack the three channel planes vertically into one grayscale image.

    Lossless: rows [k*H, (k+1)*H) of the output hold channel k.
    """
    a = as_image(img)
    if a.shape[2] != 3:
        raise ValueError(f"color_flatten requires a 3-channel image, got {a.shape[2]}")
    return np.concatenate([a[:, :, 0], a[:, :, 1], a[:, :, 2]], axis=0)[:, :, np.newaxis]


def color_unflatten(img: np.ndarray) -> np.ndarray:
    """Inverse of color_flatten (used to verify losslessness)."""
    a = as_image(img)
    if a.shape[2] != 1 or a.shape[0] % 3 != 0:
        raise ValueError("expected a single-channel image with height divisible by 3")
    h = a.shape[0] // 3
    return np.stack([a[:h, :, 0], a[h : 2 * h, :, 0], a[2 * h :, :, 0]], axis=2)
