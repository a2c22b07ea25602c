"""Corpus enumeration, deterministic splits, batch jobs and verification.

A job turns (input tree, operation, master seed) into a mirrored output
tree plus a `manifest.jsonl` with one record per image and a `job.json`
echo of the configuration.  Every image gets its stream seed from
(master seed, relative path), so results are byte-identical regardless
of worker count or completion order; the manifest is sorted by key
before it is written.

Seeds and digests are serialized as strings (decimal / 16-hex) so the
manifest survives JSON parsers with 53-bit integers.
"""

from __future__ import annotations

import json
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path, PurePosixPath
from typing import Any, Iterable

import numpy as np
from PIL import Image

from . import _backend, rng
from .api import Operation, apply_operation, operation_from_mapping
from .image import as_image
from .specs import MULTISET_PRESERVING, TransformSpec

IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg"}

MANIFEST_NAME = "manifest.jsonl"
JOB_NAME = "job.json"


class ConfigError(ValueError):
    """Invalid job/CLI configuration (maps to CLI exit code 1)."""


# ---------------------------------------------------------------- corpus IO


def list_corpus(root: Path, pattern: str = "**/*") -> list[str]:
    """Relative POSIX keys of all images under root, sorted."""
    root = Path(root)
    keys = [
        p.relative_to(root).as_posix()
        for p in root.glob(pattern)
        if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES
    ]
    return sorted(keys)


def load_image(path: Path) -> np.ndarray:
    """Decode to (H, W, C) uint8; grayscale stays 1-channel, everything
    else (palette, alpha, CMYK, 16-bit) is converted to RGB/L."""
    with Image.open(path) as im:
        if im.mode == "L":
            pass
        elif im.mode in ("I", "I;16", "F", "LA"):
            im = im.convert("L")
        elif im.mode != "RGB":
            im = im.convert("RGB")
        arr = np.array(im)  # writable copy, not PIL's read-only view
    return as_image(arr)


def save_png(path: Path, arr: np.ndarray) -> None:
    a = as_image(arr)
    im = Image.fromarray(a[:, :, 0] if a.shape[2] == 1 else a)
    path.parent.mkdir(parents=True, exist_ok=True)
    # low compression level: lossless either way, much faster to encode
    im.save(path, format="PNG", compress_level=1)


def pixel_digest(arr: np.ndarray) -> int:
    """64-bit content identity over dimensions + raw samples (encoding
    independent: equal pixels give equal digests regardless of file
    format)."""
    a = as_image(arr)
    h, w, c = a.shape
    h0 = _backend.fnv1a64(struct.pack("<III", w, h, c))
    return _backend.fnv1a64(a.reshape(-1), h0)


def same_pixel_multiset(a: np.ndarray, b: np.ndarray) -> bool:
    """True iff the two images contain the same pixel tuples with the
    same multiplicities."""
    a, b = as_image(a), as_image(b)
    if a.shape[2] != b.shape[2] or a.shape[0] * a.shape[1] != b.shape[0] * b.shape[1]:
        return False
    return np.array_equal(_packed_sorted(a), _packed_sorted(b))


def _packed_sorted(img: np.ndarray) -> np.ndarray:
    flat = img.reshape(-1, img.shape[2]).astype(np.uint32)
    if img.shape[2] == 1:
        packed = flat[:, 0]
    else:
        packed = (flat[:, 0] << 16) | (flat[:, 1] << 8) | flat[:, 2]
    return np.sort(packed)


# ------------------------------------------------------------------- split


@dataclass(frozen=True)
class SplitSpec:
    """Three-way corpus split, by exact counts or by ratios."""

    seed: int
    counts: tuple[int, int, int] | None = None
    ratios: tuple[float, float, float] | None = None

    def __post_init__(self):
        if (self.counts is None) == (self.ratios is None):
            raise ConfigError("exactly one of counts/ratios must be given")
        if self.counts is not None:
            if any(c < 0 for c in self.counts):
                raise ConfigError("split counts must be >= 0")
        else:
            if any(r < 0 for r in self.ratios):
                raise ConfigError("split ratios must be >= 0")
            if abs(sum(self.ratios) - 1.0) > 1e-9:
                raise ConfigError(f"split ratios must sum to 1, got {sum(self.ratios)}")


def split_corpus(keys: Iterable[str], split: SplitSpec) -> tuple[list[str], list[str], list[str]]:
    """Deterministic disjoint train/val/test partition.

    Keys are sorted before the seeded shuffle, so the partition does not
    depend on enumeration order.  Ratio mode floors the train and val
    sizes and gives the remainder to test.
    """
    keys = list(keys)
    if not keys:
        raise ConfigError("cannot split an empty key list")
    if len(set(keys)) != len(keys):
        raise ConfigError("duplicate keys in corpus")
    n = len(keys)
    if split.counts is not None:
        a, b, c = split.counts
        if a + b + c != n:
            raise ConfigError(f"split counts sum to {a + b + c} but corpus has {n} keys")
    else:
        a = int(n * split.ratios[0])
        b = int(n * split.ratios[1])
        c = n - a - b
    ordered = sorted(keys)
    perm = rng.seeded_permutation(split.seed, n)
    shuffled = [ordered[i] for i in perm]
    return shuffled[:a], shuffled[a : a + b], shuffled[a + b : a + b + c]


# --------------------------------------------------------------------- job


@dataclass(frozen=True)
class JobConfig:
    input_root: Path
    output_root: Path
    op: Operation
    master_seed: int
    workers: int = 1
    image_glob: str = "**/*"
    format: str = "png"

    def __post_init__(self):
        object.__setattr__(self, "input_root", Path(self.input_root))
        object.__setattr__(self, "output_root", Path(self.output_root))
        if not self.input_root.is_dir():
            raise ConfigError(f"input root does not exist: {self.input_root}")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.format != "png":
            raise ConfigError(f"unsupported output format {self.format!r} (only 'png')")

    def op_mapping(self) -> dict[str, Any]:
        return self.op.to_mapping()


@dataclass
class ManifestRecord:
    image_key: str
    status: str  # "ok" | "error"
    spec: dict[str, Any]
    derived_seed: int
    input_digest: int | None = None
    output_path: str | None = None
    output_digest: int | None = None
    error: str | None = None

    def to_json(self) -> str:
        doc = {
            "image_key": self.image_key,
            "status": self.status,
            "spec": self.spec,
            "derived_seed": str(self.derived_seed),
            "input_digest": None if self.input_digest is None else f"{self.input_digest:016x}",
            "output_path": self.output_path,
            "output_digest": None if self.output_digest is None else f"{self.output_digest:016x}",
            "error": self.error,
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "ManifestRecord":
        doc = json.loads(line)
        return cls(
            image_key=doc["image_key"],
            status=doc["status"],
            spec=doc["spec"],
            derived_seed=int(doc["derived_seed"]),
            input_digest=None if doc["input_digest"] is None else int(doc["input_digest"], 16),
            output_path=doc["output_path"],
            output_digest=None if doc["output_digest"] is None else int(doc["output_digest"], 16),
            error=doc["error"],
        )


@dataclass
class Manifest:
    records: list[ManifestRecord]
    input_root: Path
    output_root: Path
    job: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.status == "ok" for r in self.records)

    def write(self) -> None:
        self.output_root.mkdir(parents=True, exist_ok=True)
        manifest_path = self.output_root / MANIFEST_NAME
        with open(manifest_path, "w", encoding="utf-8", newline="\n") as fh:
            for rec in self.records:
                fh.write(rec.to_json() + "\n")
        with open(self.output_root / JOB_NAME, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(json.dumps(self.job, sort_keys=True, separators=(",", ":")) + "\n")

    @classmethod
    def load(cls, manifest_path: Path) -> "Manifest":
        manifest_path = Path(manifest_path)
        if manifest_path.is_dir():
            manifest_path = manifest_path / MANIFEST_NAME
        if not manifest_path.is_file():
            raise ConfigError(f"manifest not found: {manifest_path}")
        records = []
        with open(manifest_path, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    records.append(ManifestRecord.from_json(line))
        job_path = manifest_path.parent / JOB_NAME
        job = {}
        if job_path.is_file():
            job = json.loads(job_path.read_text(encoding="utf-8"))
        input_root = Path(job.get("input_root", "."))
        return cls(
            records=records,
            input_root=input_root,
            output_root=manifest_path.parent,
            job=job,
        )


def output_key(image_key: str) -> str:
    return str(PurePosixPath(image_key).with_suffix(".png"))


def _process_one(
    input_root: str, output_root: str, key: str, op_mapping: dict, master_seed: int
) -> ManifestRecord:
    op = operation_from_mapping(op_mapping)
    derived = rng.derive_image_seed(master_seed, key)
    try:
        arr = load_image(Path(input_root) / key)
        out = apply_operation(arr, op, derived)
        out_key = output_key(key)
        save_png(Path(output_root) / out_key, out)
        return ManifestRecord(
            image_key=key,
            status="ok",
            spec=op_mapping,
            derived_seed=derived,
            input_digest=pixel_digest(arr),
            output_path=out_key,
            output_digest=pixel_digest(out),
        )
    except Exception as exc:  # per-image isolation: the job must go on
        return ManifestRecord(
            image_key=key,
            status="error",
            spec=op_mapping,
            derived_seed=derived,
            error=f"{type(exc).__name__}: {exc}",
        )


def run_job(cfg: JobConfig) -> Manifest:
    """Process every matched image; per-image failures are recorded, not
    raised.  Output bytes and manifest are a pure function of (input
    bytes, config) for any worker count."""
    keys = list_corpus(cfg.input_root, cfg.image_glob)
    outs = [output_key(k) for k in keys]
    if len(set(outs)) != len(outs):
        dupe = next(o for o in outs if outs.count(o) > 1)
        raise ConfigError(f"two inputs map to the same output file: {dupe}")

    op_mapping = cfg.op_mapping()
    args = [
        (str(cfg.input_root), str(cfg.output_root), k, op_mapping, cfg.master_seed) for k in keys
    ]
    cfg.output_root.mkdir(parents=True, exist_ok=True)
    if cfg.workers == 1 or len(keys) <= 1:
        records = [_process_one(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            records = list(pool.map(_process_one, *zip(*args), chunksize=8))
    records.sort(key=lambda r: r.image_key)

    manifest = Manifest(
        records=records,
        input_root=cfg.input_root,
        output_root=cfg.output_root,
        job={
            "input_root": str(cfg.input_root),
            "output_root": str(cfg.output_root),
            "spec": op_mapping,
            "master_seed": str(cfg.master_seed),
            "workers": cfg.workers,
            "image_glob": cfg.image_glob,
            "format": cfg.format,
        },
    )
    manifest.write()
    return manifest


# -------------------------------------------------------------- verification


@dataclass
class VerifyEntry:
    image_key: str
    ok: bool
    reasons: list[str]


@dataclass
class VerifyReport:
    entries: list[VerifyEntry]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def summary(self) -> str:
        bad = sum(1 for e in self.entries if not e.ok)
        return f"{len(self.entries) - bad}/{len(self.entries)} records verified"


def verify_outputs(manifest: Manifest) -> VerifyReport:
    """Recompute digests for every record; multiset-preserving transforms
    additionally get their input/output pixel multisets compared."""
    entries = []
    for rec in manifest.records:
        reasons: list[str] = []
        if rec.status != "ok":
            entries.append(VerifyEntry(rec.image_key, False, [f"job-time error: {rec.error}"]))
            continue
        arr = out = None
        try:
            arr = load_image(manifest.input_root / rec.image_key)
            if pixel_digest(arr) != rec.input_digest:
                reasons.append("input digest mismatch")
        except Exception as exc:
            reasons.append(f"input unreadable: {type(exc).__name__}: {exc}")
        try:
            out = load_image(manifest.output_root / rec.output_path)
            if pixel_digest(out) != rec.output_digest:
                reasons.append("output digest mismatch")
        except Exception as exc:
            reasons.append(f"output unreadable: {type(exc).__name__}: {exc}")
        if arr is not None and out is not None and _is_multiset_preserving(rec.spec):
            if not same_pixel_multiset(arr, out):
                reasons.append("pixel multiset not preserved")
        entries.append(VerifyEntry(rec.image_key, not reasons, reasons))
    return VerifyReport(entries)


def _is_multiset_preserving(spec_mapping: dict[str, Any]) -> bool:
    if "noise" in spec_mapping:
        return False
    try:
        spec = TransformSpec.from_mapping(spec_mapping)
    except ValueError:
        return False
    return spec.kind in MULTISET_PRESERVING
