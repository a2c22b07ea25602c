import numpy as np
import pytest

from eitkit import rng
from eitkit.segmentation import (
    SegmentMap,
    segmentation_displacement_shuffle,
    segmentation_within_shuffle,
    superpixel_segment,
)

from conftest import decode_positions, distinct_pixel_image, pixel_multiset, random_image


def flood_fill_components(labels: np.ndarray) -> int:
    """Count 4-connected components of equal-label regions (test-local BFS,
    independent of the implementation's connectivity machinery)."""
    h, w = labels.shape
    seen = np.zeros((h, w), dtype=bool)
    comps = 0
    for sy in range(h):
        for sx in range(w):
            if seen[sy, sx]:
                continue
            comps += 1
            val = labels[sy, sx]
            stack = [(sy, sx)]
            seen[sy, sx] = True
            while stack:
                y, x = stack.pop()
                for ny, nx in ((y - 1, x), (y + 1, x), (y, x - 1), (y, x + 1)):
                    if 0 <= ny < h and 0 <= nx < w and not seen[ny, nx] and labels[ny, nx] == val:
                        seen[ny, nx] = True
                        stack.append((ny, nx))
    return comps


def halves_segment_map(h: int, w: int) -> SegmentMap:
    labels = np.zeros((h, w), dtype=np.int32)
    labels[:, w // 2 :] = 1
    return SegmentMap(labels=labels, n_labels=2)


# ------------------------------------------------------------- clustering


def test_constant_image_near_equal_blocks():
    seg = superpixel_segment(np.full((32, 32, 3), 77, np.uint8), 4)
    assert seg.n_labels == 4
    sizes = np.bincount(seg.labels.ravel())
    assert sizes.min() >= 0.75 * 256 and sizes.max() <= 1.3 * 256
    # contiguous: one component per label
    assert flood_fill_components(seg.labels) == 4


def test_single_segment():
    img = random_image(np.random.default_rng(1), 16, 20, 3)
    seg = superpixel_segment(img, 1)
    assert seg.n_labels == 1
    assert np.all(seg.labels == 0)


def test_two_tone_boundary_respected():
    img = np.zeros((64, 64, 3), dtype=np.uint8)
    img[:, 32:] = 255
    seg = superpixel_segment(img, 8)
    # cross-tabulate labels against tone: no label on both sides
    left = set(np.unique(seg.labels[:, :32]).tolist())
    right = set(np.unique(seg.labels[:, 32:]).tolist())
    assert not (left & right)


def test_deterministic():
    img = random_image(np.random.default_rng(7), 40, 56, 3)
    a = superpixel_segment(img, 8)
    b = superpixel_segment(img.copy(), 8)
    np.testing.assert_array_equal(a.labels, b.labels)
    assert a.n_labels == b.n_labels


def test_label_count_bounds_and_connectivity():
    rngnp = np.random.default_rng(42)
    for _ in range(12):
        h = int(rngnp.integers(6, 48))
        w = int(rngnp.integers(6, 48))
        c = int(rngnp.choice([1, 3]))
        n = int(rngnp.integers(1, 12))
        seg = superpixel_segment(random_image(rngnp, h, w, c), n)
        assert 1 <= seg.n_labels <= 2 * n
        sizes = np.bincount(seg.labels.ravel(), minlength=seg.n_labels)
        assert sizes.min() >= 1
        # every label region is 4-connected
        assert flood_fill_components(seg.labels) == seg.n_labels


def test_argument_validation():
    img = np.zeros((8, 8, 3), dtype=np.uint8)
    with pytest.raises(ValueError):
        superpixel_segment(img, 0)
    with pytest.raises(ValueError):
        superpixel_segment(img, 65)  # more segments than pixels
    with pytest.raises(ValueError):
        superpixel_segment(img, 4, iterations=0)


def test_grayscale_input_supported():
    img = random_image(np.random.default_rng(3), 32, 32, 1)
    seg = superpixel_segment(img, 6)
    assert seg.labels.shape == (32, 32)


# ------------------------------------------------------------ displacement


def test_displacement_identity_on_single_segment():
    img = distinct_pixel_image(8, 8)
    seg = SegmentMap(labels=np.zeros((8, 8), dtype=np.int32), n_labels=1)
    np.testing.assert_array_equal(segmentation_displacement_shuffle(img, seg, 99), img)


def test_displacement_equal_halves_preserves_multiset():
    img = distinct_pixel_image(8, 12)
    seg = halves_segment_map(8, 12)
    # find a seed whose 2-permutation is the swap
    seed = next(s for s in range(50) if rng.seeded_permutation(s, 2).tolist() == [1, 0])
    out = segmentation_displacement_shuffle(img, seg, seed)
    assert pixel_multiset(out) == pixel_multiset(img)
    np.testing.assert_array_equal(out[:, 6:], img[:, :6])
    np.testing.assert_array_equal(out[:, :6], img[:, 6:])


def test_displacement_provenance_with_unequal_segments():
    img = distinct_pixel_image(16, 16)
    labels = np.zeros((16, 16), dtype=np.int32)
    labels[:4, :] = 0
    labels[4:9, :] = 1
    labels[9:, :8] = 2
    labels[9:, 8:] = 3
    seg = SegmentMap(labels=labels, n_labels=4)
    seed = 9
    perm = rng.seeded_permutation(seed, 4)
    out = segmentation_displacement_shuffle(img, seg, seed)
    src = decode_positions(out).reshape(16, 16)
    src_label = labels.reshape(-1)[src.reshape(-1)].reshape(16, 16)
    for i in range(4):
        donors = set(np.unique(src_label[labels == i]).tolist())
        assert donors == {int(perm[i])}
    # receivers larger than their donor cycle the donor in raster order
    for i in range(4):
        recv = np.flatnonzero(labels.reshape(-1) == i)
        donor = np.flatnonzero(labels.reshape(-1) == perm[i])
        expected = donor[np.arange(recv.size) % donor.size]
        np.testing.assert_array_equal(src.reshape(-1)[recv], expected)


def test_displacement_dimension_mismatch():
    img = distinct_pixel_image(8, 8)
    seg = halves_segment_map(8, 10)
    with pytest.raises(ValueError):
        segmentation_displacement_shuffle(img, seg, 1)


def test_displacement_deterministic():
    img = distinct_pixel_image(12, 12)
    seg = superpixel_segment(img, 5)
    a = segmentation_displacement_shuffle(img, seg, 4)
    b = segmentation_displacement_shuffle(img, seg, 4)
    np.testing.assert_array_equal(a, b)


# ----------------------------------------------------------- within-segment


def test_within_p0_identity():
    img = distinct_pixel_image(16, 16)
    seg = superpixel_segment(img, 4)
    np.testing.assert_array_equal(segmentation_within_shuffle(img, seg, 0.0, 5), img)


def test_within_p1_per_segment_multisets():
    img = distinct_pixel_image(24, 24)
    seg = superpixel_segment(img, 6)
    out = segmentation_within_shuffle(img, seg, 1.0, 8)
    for i in range(seg.n_labels):
        mask = seg.labels == i
        assert pixel_multiset(out[mask][:, None, :]) == pixel_multiset(img[mask][:, None, :])


def test_within_no_cross_boundary_moves():
    img = distinct_pixel_image(32, 32)
    seg = superpixel_segment(img, 8)
    out = segmentation_within_shuffle(img, seg, 0.5, 11)
    src = decode_positions(out)
    flat_labels = seg.labels.reshape(-1)
    np.testing.assert_array_equal(flat_labels[src], flat_labels)


def test_within_validation():
    img = distinct_pixel_image(8, 8)
    seg = halves_segment_map(8, 8)
    with pytest.raises(ValueError):
        segmentation_within_shuffle(img, seg, 1.5, 1)
    with pytest.raises(ValueError):
        segmentation_within_shuffle(img, halves_segment_map(8, 9), 0.5, 1)


# --------------------------------------------------------------- SegmentMap


def test_segment_map_validation():
    with pytest.raises(ValueError):
        SegmentMap(labels=np.zeros((4, 4), dtype=np.int32), n_labels=2)  # label 1 missing
    with pytest.raises(ValueError):
        SegmentMap(labels=np.full((4, 4), -1, dtype=np.int32), n_labels=1)
    with pytest.raises(ValueError):
        SegmentMap(labels=np.zeros(16, dtype=np.int32), n_labels=1)


def test_label_image_scaling():
    labels = np.repeat(np.arange(4, dtype=np.int32), 4).reshape(4, 4)
    m = SegmentMap(labels=labels, n_labels=4)
    dump = m.to_label_image()
    assert dump.dtype == np.uint8 and dump.shape == (4, 4, 1)
    assert dump.min() == 0 and dump.max() == 255
    single = SegmentMap(labels=np.zeros((2, 2), dtype=np.int32), n_labels=1)
    assert np.all(single.to_label_image() == 0)
