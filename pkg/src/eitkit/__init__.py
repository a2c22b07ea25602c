"""eitkit: deterministic pixel/block/segment shuffle transforms and
gaussian-noise corruption for image corpora.

The same (image, parameters, seed) triple always produces the same bytes,
whether a transform runs in-process through `apply`, in a parallel batch
job, or through the CLI, and regardless of worker count or kernel
backend.
"""

from ._backend import backend_name
from .api import apply, apply_operation, gaussian, kinds
from .corruption import GaussianNoiseSpec, gaussian_noise, severity_sigma
from .grid import TileGrid, tile_partition
from .image import ImageBuffer, as_image
from .pipeline import (
    JobConfig,
    Manifest,
    ManifestRecord,
    SplitSpec,
    run_job,
    split_corpus,
    verify_outputs,
)
from .rng import bernoulli_select, derive_image_seed, derive_substream, seeded_permutation
from .segmentation import (
    SegmentMap,
    segmentation_displacement_shuffle,
    segmentation_within_shuffle,
    superpixel_segment,
)
from .specs import Kind, TransformSpec
from .transforms import (
    color_flatten,
    color_unflatten,
    full_random_shuffle,
    grid_shuffle,
    local_structure_shuffle,
    within_grid_shuffle,
)

__version__ = "0.1.0"

__all__ = [
    "ImageBuffer",
    "as_image",
    "TileGrid",
    "tile_partition",
    "Kind",
    "TransformSpec",
    "GaussianNoiseSpec",
    "SegmentMap",
    "SplitSpec",
    "JobConfig",
    "Manifest",
    "ManifestRecord",
    "apply",
    "apply_operation",
    "gaussian",
    "kinds",
    "backend_name",
    "derive_image_seed",
    "derive_substream",
    "seeded_permutation",
    "bernoulli_select",
    "full_random_shuffle",
    "grid_shuffle",
    "within_grid_shuffle",
    "local_structure_shuffle",
    "color_flatten",
    "color_unflatten",
    "superpixel_segment",
    "segmentation_displacement_shuffle",
    "segmentation_within_shuffle",
    "gaussian_noise",
    "severity_sigma",
    "split_corpus",
    "run_job",
    "verify_outputs",
]
