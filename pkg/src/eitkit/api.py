"""Array-in/array-out entry points.

These are what training loops call to transform images on the fly, and
what the batch pipeline runs per image.  `apply` accepts a TransformSpec
or a plain mapping with the same field names the CLI uses.
"""

from __future__ import annotations

from typing import Any, Mapping, Union

import numpy as np

from . import segmentation, transforms
from .corruption import GaussianNoiseSpec, gaussian_noise
from .image import as_image
from .specs import Kind, TransformSpec
from .specs import kinds as kinds  # re-exported

SpecLike = Union[TransformSpec, Mapping[str, Any]]
Operation = Union[TransformSpec, GaussianNoiseSpec]


def _coerce_spec(spec: SpecLike) -> TransformSpec:
    if isinstance(spec, TransformSpec):
        return spec
    return TransformSpec.from_mapping(spec)


def apply(img: np.ndarray, spec: SpecLike, seed: int) -> np.ndarray:
    """Apply one transform to an image; the input array is never mutated.

    The swap switch gates the unit-level permutation: a grid shuffle or
    segment displacement with swap off is the identity, and a
    local-structure shuffle with swap off degenerates to its within-tile
    stage.
    """
    s = _coerce_spec(spec)
    a = as_image(img)
    if s.kind is Kind.FULL_RANDOM_SHUFFLE:
        return transforms.full_random_shuffle(a, s.p, seed)
    if s.kind is Kind.GRID_SHUFFLE:
        if not s.swap:
            return a.copy()
        return transforms.grid_shuffle(a, s.grid_size, seed)
    if s.kind is Kind.WITHIN_GRID_SHUFFLE:
        return transforms.within_grid_shuffle(a, s.grid_size, s.p, seed)
    if s.kind is Kind.LOCAL_STRUCTURE_SHUFFLE:
        return transforms.local_structure_shuffle(a, s.grid_size, s.p, seed, swap=s.swap)
    if s.kind is Kind.COLOR_FLATTEN:
        return transforms.color_flatten(a)
    if s.kind is Kind.SEGMENTATION_DISPLACEMENT_SHUFFLE:
        if not s.swap:
            return a.copy()
        seg = segmentation.superpixel_segment(a, s.n_segments)
        return segmentation.segmentation_displacement_shuffle(a, seg, seed)
    if s.kind is Kind.SEGMENTATION_WITHIN_SHUFFLE:
        seg = segmentation.superpixel_segment(a, s.n_segments)
        return segmentation.segmentation_within_shuffle(a, seg, s.p, seed)
    raise AssertionError(f"unhandled kind {s.kind}")


def gaussian(img: np.ndarray, severity: int, seed: int) -> np.ndarray:
    """Severity-parameterized gaussian corruption (input never mutated)."""
    return gaussian_noise(img, severity, seed)


def apply_operation(img: np.ndarray, op: Operation, seed: int) -> np.ndarray:
    """Dispatch a job operation: transform spec or corruption spec."""
    if isinstance(op, GaussianNoiseSpec):
        return gaussian_noise(img, op.severity, seed)
    return apply(img, op, seed)


def operation_from_mapping(mapping: Mapping[str, Any]) -> Operation:
    if "noise" in mapping:
        return GaussianNoiseSpec.from_mapping(mapping)
    return TransformSpec.from_mapping(mapping)
