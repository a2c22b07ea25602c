"""Superpixel segmentation and segment-level shuffle transforms.

Segmentation is SLIC-style k-means over (color, x*s, y*s) features with
s = compactness / grid-interval: centers start on a regular grid, each
center only competes for pixels inside a window of twice the grid pitch,
and after the iterations every label is made 4-connected by merging
orphan fragments into their largest neighboring region.  There is no
randomness anywhere, so the same image always yields the same map.

Color features are CIELAB (D65) for 3-channel input and raw intensity
for single-channel input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from skimage import measure

from . import _backend, rng
from .image import as_image

DEFAULT_COMPACTNESS = 10.0
DEFAULT_ITERATIONS = 10

# sRGB (D65) -> XYZ
_RGB_TO_XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
)
_WHITE = np.array([0.95047, 1.0, 1.08883])


@dataclass(frozen=True)
class SegmentMap:
    """Per-pixel superpixel labels, dense 0..n_labels-1, each non-empty."""

    labels: np.ndarray
    n_labels: int

    def __post_init__(self):
        lab = np.asarray(self.labels)
        if lab.ndim != 2:
            raise ValueError(f"labels must be 2-D, got shape {lab.shape}")
        lab = np.ascontiguousarray(lab, dtype=np.int32)
        if self.n_labels < 1:
            raise ValueError("n_labels must be >= 1")
        if lab.min() < 0 or lab.max() >= self.n_labels:
            raise ValueError("labels out of range")
        if np.unique(lab).size != self.n_labels:
            raise ValueError("every label in 0..n_labels-1 must occur")
        object.__setattr__(self, "labels", lab)

    def to_label_image(self) -> np.ndarray:
        """Labels scaled onto 0..255 for a portable grayscale dump."""
        span = max(1, self.n_labels - 1)
        return ((self.labels.astype(np.int64) * 255) // span).astype(np.uint8)[:, :, np.newaxis]


def _rgb_to_lab(a: np.ndarray) -> np.ndarray:
    c = a.astype(np.float64) / 255.0
    lin = np.where(c <= 0.04045, c / 12.92, ((c + 0.055) / 1.055) ** 2.4)
    xyz = lin @ _RGB_TO_XYZ.T / _WHITE
    eps = (6.0 / 29.0) ** 3
    f = np.where(xyz > eps, np.cbrt(xyz), xyz / (3.0 * (6.0 / 29.0) ** 2) + 4.0 / 29.0)
    out = np.empty_like(xyz)
    out[..., 0] = 116.0 * f[..., 1] - 16.0
    out[..., 1] = 500.0 * (f[..., 0] - f[..., 1])
    out[..., 2] = 200.0 * (f[..., 1] - f[..., 2])
    return out


def _center_grid(width: int, height: int, n_segments: int) -> tuple[int, int]:
    """Rows/cols of the initial center lattice, product close to n_segments."""
    cols = int(math.floor(math.sqrt(n_segments * width / height) + 0.5))
    cols = max(1, min(n_segments, width, cols))
    rows = int(math.floor(n_segments / cols + 0.5))
    rows = max(1, min(height, rows))
    return rows, cols


def _enforce_connectivity(labels: np.ndarray) -> tuple[np.ndarray, int]:
    """Split labels into 4-connected components; each label keeps its
    largest component and every other fragment merges into the adjacent
    region with the most pixels (ties: earliest region in raster order).
    Returns dense labels renumbered by first raster appearance."""
    h, w = labels.shape
    comp = measure.label(labels, connectivity=1, background=-1)
    flat = comp.ravel()
    ids, first = np.unique(flat, return_index=True)
    # canonical rank = order of first appearance in raster scan
    rank_order = np.argsort(first, kind="stable")
    rank_of_id = np.empty(ids.max() + 1, dtype=np.int64)
    rank_of_id[ids[rank_order]] = np.arange(len(ids))
    region = rank_of_id[flat]
    n_comp = len(ids)

    counts = np.bincount(region, minlength=n_comp)
    # ranks are ordered by first appearance, so rank r's first pixel is:
    first_pix = np.sort(first)
    owner_label = labels.ravel()[first_pix]

    # anchor per label value = component with max size, tie -> lowest rank
    by_label = np.lexsort((-counts, owner_label))
    anchors = set(by_label[np.unique(owner_label[by_label], return_index=True)[1]].tolist())

    # undirected adjacency between components, from right/down pixel pairs
    grid = region.reshape(h, w)
    lo_hi = []
    for a, b in ((grid[:, :-1], grid[:, 1:]), (grid[:-1, :], grid[1:, :])):
        a, b = a.ravel(), b.ravel()
        m = a != b
        if m.any():
            lo_hi.append(np.minimum(a[m], b[m]) * n_comp + np.maximum(a[m], b[m]))
    neighbors: list[set[int]] = [set() for _ in range(n_comp)]
    if lo_hi:
        for code in np.unique(np.concatenate(lo_hi)).tolist():
            u, v = divmod(code, n_comp)
            neighbors[u].add(v)
            neighbors[v].add(u)

    parent = list(range(n_comp))

    def find(r: int) -> int:
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    size = counts.astype(np.int64).tolist()
    for r in range(n_comp):
        if r in anchors:
            continue
        cand = {find(q) for q in neighbors[r]} - {r}
        target = min(cand, key=lambda t: (-size[t], t))
        parent[r] = target
        size[target] += size[r]
        neighbors[target] |= neighbors[r]
        neighbors[r] = set()

    roots = np.array([find(r) for r in range(n_comp)], dtype=np.int64)
    merged = roots[region]
    # dense renumber by first raster appearance of the final regions
    uniq, first_out = np.unique(merged, return_index=True)
    out_rank = np.empty(int(uniq.max()) + 1, dtype=np.int32)
    out_rank[uniq[np.argsort(first_out, kind="stable")]] = np.arange(len(uniq), dtype=np.int32)
    return out_rank[merged].reshape(h, w), len(uniq)


def superpixel_segment(
    img: np.ndarray,
    n_segments: int,
    compactness: float = DEFAULT_COMPACTNESS,
    iterations: int = DEFAULT_ITERATIONS,
) -> SegmentMap:
    """Cluster an image into roughly n_segments contiguous superpixels."""
    a = as_image(img)
    h, w, c = a.shape
    if n_segments < 1:
        raise ValueError("n_segments must be >= 1")
    if n_segments > h * w:
        raise ValueError(f"n_segments={n_segments} exceeds pixel count {h * w}")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")

    feat = _rgb_to_lab(a) if c == 3 else a.astype(np.float64)
    rows, cols = _center_grid(w, h, n_segments)
    k = rows * cols
    gx = (np.arange(cols, dtype=np.float64) + 0.5) * (w / cols)
    gy = (np.arange(rows, dtype=np.float64) + 0.5) * (h / rows)
    cx = np.tile(gx, rows)
    cy = np.repeat(gy, cols)
    px = np.minimum(w - 1, np.floor(cx).astype(np.int64))
    py = np.minimum(h - 1, np.floor(cy).astype(np.int64))
    cfeat = np.ascontiguousarray(feat[py, px, :])

    interval = math.sqrt(w * h / k)
    s2 = (compactness / interval) ** 2
    win_x = int(math.ceil(w / cols))
    win_y = int(math.ceil(h / rows))
    labels = np.zeros((h, w), dtype=np.int32)
    _backend.slic_iterate(
        np.ascontiguousarray(feat), cx, cy, cfeat, s2, iterations, win_x, win_y, labels
    )

    final, n_labels = _enforce_connectivity(labels)
    return SegmentMap(labels=final, n_labels=n_labels)


def _grouped_positions(seg: SegmentMap) -> list[np.ndarray]:
    """Flat pixel indices per label, raster order within each label."""
    flat = seg.labels.ravel()
    order = np.argsort(flat, kind="stable")
    starts = np.searchsorted(flat[order], np.arange(seg.n_labels))
    ends = np.searchsorted(flat[order], np.arange(seg.n_labels), side="right")
    return [order[starts[i] : ends[i]] for i in range(seg.n_labels)]


def _check_dims(a: np.ndarray, seg: SegmentMap) -> None:
    if seg.labels.shape != a.shape[:2]:
        raise ValueError(
            f"segment map shape {seg.labels.shape} does not match image {a.shape[:2]}"
        )


def segmentation_displacement_shuffle(img: np.ndarray, seg: SegmentMap, seed: int) -> np.ndarray:
    """Relocate segment contents: segment i is refilled, in raster order,
    with the pixels of segment perm(i), cycling the donor when the
    receiver is larger and truncating when smaller."""
    a = as_image(img)
    _check_dims(a, seg)
    c = a.shape[2]
    flat = a.reshape(-1, c)
    out = flat.copy()
    groups = _grouped_positions(seg)
    perm = rng.seeded_permutation(seed, seg.n_labels)
    for i, recv in enumerate(groups):
        donor = groups[perm[i]]
        out[recv] = flat[donor[np.arange(recv.size) % donor.size]]
    return out.reshape(a.shape)


def segmentation_within_shuffle(
    img: np.ndarray, seg: SegmentMap, p: float, seed: int
) -> np.ndarray:
    """Shuffle pixels inside each segment independently; nothing crosses a
    segment boundary.  Segment i uses substream (seed, i)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    a = as_image(img)
    _check_dims(a, seg)
    c = a.shape[2]
    out = a.copy()
    flat = out.reshape(-1, c)
    for i, positions in enumerate(_grouped_positions(seg)):
        lseed = rng.derive_substream(seed, i)
        sel_local = rng.bernoulli_select(rng.derive_substream(lseed, 1), positions.size, p)
        if sel_local.size < 2:
            continue
        sel = positions[sel_local]
        perm = rng.seeded_permutation(rng.derive_substream(lseed, 2), sel_local.size)
        flat[sel] = flat[sel[perm]]
    return out
