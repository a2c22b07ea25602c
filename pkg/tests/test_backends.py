"""Compiled extension vs pure fallback: outputs must be byte-identical.

The fallback is not a approximation, it is the same algorithm; any
divergence is a bug in one of the two."""

import numpy as np
import pytest

from eitkit import _kernels_py
from eitkit.bench import _restore_backend, _swap_backend, available_backends

from conftest import random_image

ext = pytest.importorskip("eitkit._kernels", reason="compiled extension not built")


def test_backend_names():
    names = [m.NAME for m in available_backends()]
    assert names == ["ext", "python"]


def test_fisher_yates_parity():
    for seed, n in [(0, 0), (0, 1), (42, 5), (7, 257), (2**64 - 1, 1000)]:
        np.testing.assert_array_equal(
            ext.fisher_yates(seed, n), _kernels_py.fisher_yates(seed, n)
        )


def test_fnv_parity():
    blobs = [b"", b"a", b"abc" * 1000, bytes(range(256))]
    for blob in blobs:
        assert ext.fnv1a64(blob) == _kernels_py.fnv1a64(blob)
        assert ext.fnv1a64(blob, 99) == _kernels_py.fnv1a64(blob, 99)


def test_slic_parity_end_to_end(nprng):
    from eitkit.segmentation import superpixel_segment

    for _ in range(6):
        h = int(nprng.integers(7, 80))
        w = int(nprng.integers(7, 80))
        c = int(nprng.choice([1, 3]))
        n = int(nprng.integers(1, 10))
        img = random_image(nprng, h, w, c)
        results = []
        for module in available_backends():
            saved = _swap_backend(module)
            try:
                results.append(superpixel_segment(img, n))
            finally:
                _restore_backend(saved)
        np.testing.assert_array_equal(results[0].labels, results[1].labels)
        assert results[0].n_labels == results[1].n_labels


def test_transform_parity_end_to_end(nprng):
    from eitkit import api

    img = random_image(nprng, 37, 41, 3)
    specs = [
        {"kind": "full-random-shuffle", "p": 0.7},
        {"kind": "grid-shuffle", "grid_size": 10},
        {"kind": "within-grid-shuffle", "grid_size": 9, "p": 0.5},
        {"kind": "local-structure-shuffle", "grid_size": 12, "p": 1.0},
        {"kind": "segmentation-displacement-shuffle", "n_segments": 5},
        {"kind": "segmentation-within-shuffle", "n_segments": 6, "p": 0.5},
        {"kind": "color-flatten"},
    ]
    for spec in specs:
        outs = []
        for module in available_backends():
            saved = _swap_backend(module)
            try:
                outs.append(api.apply(img, spec, 314159))
            finally:
                _restore_backend(saved)
        np.testing.assert_array_equal(outs[0], outs[1])


def test_gaussian_parity(nprng):
    # noise is generated on the shared numpy path; backends cannot differ,
    # but the end-to-end check keeps that property pinned
    from eitkit import api

    img = random_image(nprng, 32, 32, 3)
    outs = []
    for module in available_backends():
        saved = _swap_backend(module)
        try:
            outs.append(api.gaussian(img, 3, 2718))
        finally:
            _restore_backend(saved)
    np.testing.assert_array_equal(outs[0], outs[1])


def test_benchmark_runner_reports_both(capsys):
    from eitkit.bench import run_benchmark

    results = run_benchmark(size=48, repeat=1)
    assert set(results) == {"ext", "python"}
    assert "speedup" in capsys.readouterr().out
