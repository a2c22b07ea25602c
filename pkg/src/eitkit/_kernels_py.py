"""Pure numpy/Python fallback kernels.

Byte-for-byte equivalent to the compiled `eitkit._kernels` extension:
same PRNG stream, same loop order, same float expression shapes.  The
compiled module exists because Fisher-Yates swap chains, FNV digests and
the cluster-assignment loop are the only parts of the engine that do not
vectorize; everything else runs through numpy either way.
"""

from __future__ import annotations

import numpy as np

NAME = "python"

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def _stream_words(seed: int, n: int) -> np.ndarray:
    k = np.arange(1, n + 1, dtype=np.uint64)
    z = np.uint64(seed & _MASK64) + k * np.uint64(_GOLDEN)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX_A)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX_B)
    return z ^ (z >> np.uint64(31))


def fisher_yates(seed: int, n: int) -> np.ndarray:
    perm = np.arange(n, dtype=np.int64)
    if n < 2:
        return perm
    draws = _stream_words(seed, n - 1)
    a = perm.tolist()
    k = 0
    for i in range(n - 1, 0, -1):
        j = int(draws[k]) % (i + 1)
        k += 1
        a[i], a[j] = a[j], a[i]
    return np.asarray(a, dtype=np.int64)


def fnv1a64(data, h0: int = _FNV_OFFSET) -> int:
    h = h0 & _MASK64
    for b in bytes(data):
        h = ((h ^ b) * _FNV_PRIME) & _MASK64
    return h


def slic_iterate(
    feat: np.ndarray,
    cx: np.ndarray,
    cy: np.ndarray,
    cfeat: np.ndarray,
    s2: float,
    iterations: int,
    win_x: int,
    win_y: int,
    labels: np.ndarray,
) -> None:
    """Restricted-neighborhood k-means over (feat, x*s, y*s).

    feat is (H, W, F) float64, centers are updated in place, labels is
    (H, W) int32 updated in place.  Clusters are visited in ascending
    index order with strict-less-than wins, and means accumulate in
    raster order, so results match the compiled kernel exactly.
    """
    h, w, nf = feat.shape
    k = cx.shape[0]
    xs = np.arange(w, dtype=np.float64)
    ys = np.arange(h, dtype=np.float64)
    flat_labels = labels.reshape(-1)
    flat_feat = feat.reshape(-1, nf)
    grid_x = np.tile(xs, h)
    grid_y = np.repeat(ys, w)

    for _ in range(iterations):
        best = np.full((h, w), np.inf, dtype=np.float64)
        for ki in range(k):
            x0 = max(0, int(np.floor(cx[ki])) - win_x)
            x1 = min(w, int(np.floor(cx[ki])) + win_x + 1)
            y0 = max(0, int(np.floor(cy[ki])) - win_y)
            y1 = min(h, int(np.floor(cy[ki])) + win_y + 1)
            if x0 >= x1 or y0 >= y1:
                continue
            window = feat[y0:y1, x0:x1, :]
            acc = np.zeros((y1 - y0, x1 - x0), dtype=np.float64)
            for f in range(nf):
                diff = window[:, :, f] - cfeat[ki, f]
                acc += diff * diff
            dx = xs[x0:x1] - cx[ki]
            dy = ys[y0:y1] - cy[ki]
            dist = acc + s2 * ((dx * dx)[None, :] + (dy * dy)[:, None])
            sub = best[y0:y1, x0:x1]
            better = dist < sub
            sub[better] = dist[better]
            labels[y0:y1, x0:x1][better] = ki

        counts = np.bincount(flat_labels, minlength=k).astype(np.float64)
        occupied = counts > 0
        for f in range(nf):
            sums = np.bincount(flat_labels, weights=flat_feat[:, f], minlength=k)
            cfeat[occupied, f] = sums[occupied] / counts[occupied]
        sx = np.bincount(flat_labels, weights=grid_x, minlength=k)
        sy = np.bincount(flat_labels, weights=grid_y, minlength=k)
        cx[occupied] = sx[occupied] / counts[occupied]
        cy[occupied] = sy[occupied] / counts[occupied]
