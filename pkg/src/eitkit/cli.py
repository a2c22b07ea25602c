"""Command-line frontend.

Subcommands: transform (shuffle jobs), corrupt (gaussian noise jobs),
split (train/val/test key lists), inspect (manifest verification),
bench (kernel backend comparison).

Exit codes are a stable contract: 0 success, 1 configuration error,
2 partial per-image failures, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .corruption import GaussianNoiseSpec
from .pipeline import (
    ConfigError,
    JobConfig,
    Manifest,
    SplitSpec,
    list_corpus,
    load_image,
    run_job,
    save_png,
    split_corpus,
    verify_outputs,
)
from .specs import TransformSpec, kinds

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PARTIAL = 2
EXIT_VERIFY = 3

# CLI flag spelling for TransformSpec field names (used in error messages)
_FLAG_OF_FIELD = {"p": "--p", "grid_size": "--grid", "n_segments": "--segments", "swap": "--swap"}


def _add_job_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=_u64, default=None, help="master seed (required)")
    p.add_argument("--in", dest="input", type=Path, default=None, help="input image tree")
    p.add_argument("--out", dest="output", type=Path, default=None, help="output root")
    p.add_argument("--workers", type=int, default=None, help="parallel workers (default: EIT_WORKERS or CPU count)")
    p.add_argument("--glob", default=None, help="corpus glob pattern (default **/*)")
    p.add_argument("--format", default=None, help="output encoding (png)")
    p.add_argument("--config", type=Path, default=None, help="JSON config file; flags take precedence")


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(prog="eitkit", description=__doc__)
    root.add_argument("--version", action="version", version=f"eitkit {__version__}")
    sub = root.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", help="apply one shuffle transform to an image tree")
    t.add_argument("--kind", default=None, help=f"one of: {', '.join(kinds())}")
    t.add_argument("--p", type=float, default=None, help="shuffle probability in [0,1]")
    t.add_argument("--grid", type=int, default=None, help="tile edge in pixels")
    t.add_argument("--segments", type=int, default=None, help="superpixel count")
    t.add_argument("--swap", action=argparse.BooleanOptionalAction, default=None,
                   help="enable/disable the tile/segment-level permutation")
    _add_job_flags(t)

    c = sub.add_parser("corrupt", help="apply gaussian noise to an image tree")
    c.add_argument("--noise", default=None, help="noise family (gaussian)")
    c.add_argument("--severity", type=int, default=None, help="severity level 1..5")
    _add_job_flags(c)

    s = sub.add_parser("split", help="write train/val/test key lists")
    s.add_argument("--counts", default=None, help="train,val,test sizes")
    s.add_argument("--ratios", default=None, help="train,val,test ratios summing to 1")
    s.add_argument("--seed", type=_u64, default=None)
    s.add_argument("--in", dest="input", type=Path, default=None)
    s.add_argument("--out", dest="output", type=Path, default=None)
    s.add_argument("--glob", default=None)
    s.add_argument("--config", type=Path, default=None)

    i = sub.add_parser("inspect", help="verify a job manifest")
    i.add_argument("--manifest", type=Path, required=True)
    i.add_argument("--dump-segments", action="store_true",
                   help="write superpixel label images next to the outputs")

    b = sub.add_parser("bench", help="compare compiled and fallback kernel backends")
    b.add_argument("--size", type=int, default=224)
    b.add_argument("--repeat", type=int, default=5)
    return root


def _merge_config(args: argparse.Namespace, names: list[str]) -> dict:
    """Start from the JSON config file (if any), override with every flag
    that was explicitly given."""
    merged: dict = {}
    if args.config is not None:
        if not args.config.is_file():
            raise ConfigError(f"config file not found: {args.config}")
        doc = json.loads(args.config.read_text(encoding="utf-8"))
        if not isinstance(doc, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = set(doc) - set(names)
        if unknown:
            raise ConfigError(f"unknown config key(s): {', '.join(sorted(unknown))}")
        merged.update(doc)
    for name in names:
        value = getattr(args, name, None)
        if value is not None:
            merged[name] = value
    return merged


def _require(merged: dict, name: str, flag: str):
    if merged.get(name) is None:
        raise ConfigError(f"missing required parameter {flag}")
    return merged[name]


def _default_workers(merged: dict) -> int:
    if merged.get("workers") is not None:
        return int(merged["workers"])
    env = os.environ.get("EIT_WORKERS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"EIT_WORKERS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _job_config(merged: dict, op) -> JobConfig:
    return JobConfig(
        input_root=Path(_require(merged, "input", "--in")),
        output_root=Path(_require(merged, "output", "--out")),
        op=op,
        master_seed=int(_require(merged, "seed", "--seed")),
        workers=_default_workers(merged),
        image_glob=merged.get("glob") or "**/*",
        format=merged.get("format") or "png",
    )


def _report_job(manifest: Manifest) -> int:
    errors = [r for r in manifest.records if r.status != "ok"]
    print(f"processed {len(manifest.records)} images, {len(errors)} failed")
    for rec in errors:
        print(f"  ERROR {rec.image_key}: {rec.error}", file=sys.stderr)
    return EXIT_PARTIAL if errors else EXIT_OK


def transform_spec_from_merged(merged: dict) -> TransformSpec:
    """Build and validate the TransformSpec named by merged CLI/config
    values; errors name the offending flag."""
    kind = _require(merged, "kind", "--kind")
    fields = {"kind": kind}
    for field, flag in (("p", "p"), ("grid_size", "grid"), ("n_segments", "segments"), ("swap", "swap")):
        if merged.get(flag) is not None:
            fields[field] = merged[flag]
    try:
        return TransformSpec.from_mapping(fields)
    except ValueError as exc:
        msg = str(exc)
        for field, flag in _FLAG_OF_FIELD.items():
            msg = msg.replace(f"parameter '{field}'", f"parameter {flag}")
        raise ConfigError(msg) from None


TRANSFORM_FLAG_NAMES = [
    "kind", "p", "grid", "segments", "swap", "seed", "input", "output",
    "workers", "glob", "format",
]


def cmd_transform(args: argparse.Namespace) -> int:
    merged = _merge_config(args, TRANSFORM_FLAG_NAMES)
    spec = transform_spec_from_merged(merged)
    manifest = run_job(_job_config(merged, spec))
    return _report_job(manifest)


def cmd_corrupt(args: argparse.Namespace) -> int:
    merged = _merge_config(
        args, ["noise", "severity", "seed", "input", "output", "workers", "glob", "format"]
    )
    noise = merged.get("noise") or "gaussian"
    severity = _require(merged, "severity", "--severity")
    try:
        spec = GaussianNoiseSpec.from_mapping({"noise": noise, "severity": severity})
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    manifest = run_job(_job_config(merged, spec))
    return _report_job(manifest)


def _parse_triple(text: str, cast):
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != 3:
        raise ConfigError(f"expected three comma-separated values, got {text!r}")
    return tuple(cast(p) for p in parts)


def cmd_split(args: argparse.Namespace) -> int:
    merged = _merge_config(args, ["counts", "ratios", "seed", "input", "output", "glob"])
    seed = int(_require(merged, "seed", "--seed"))
    if merged.get("counts") is not None and merged.get("ratios") is not None:
        raise ConfigError("give either --counts or --ratios, not both")
    if merged.get("counts") is not None:
        split = SplitSpec(seed=seed, counts=_parse_triple(merged["counts"], int))
    elif merged.get("ratios") is not None:
        split = SplitSpec(seed=seed, ratios=_parse_triple(merged["ratios"], float))
    else:
        raise ConfigError("missing required parameter --counts or --ratios")
    input_root = Path(_require(merged, "input", "--in"))
    if not input_root.is_dir():
        raise ConfigError(f"input root does not exist: {input_root}")
    keys = list_corpus(input_root, merged.get("glob") or "**/*")
    train, val, test = split_corpus(keys, split)
    out = Path(_require(merged, "output", "--out"))
    out.mkdir(parents=True, exist_ok=True)
    for name, part in (("train.txt", train), ("val.txt", val), ("test.txt", test)):
        with open(out / name, "w", encoding="utf-8", newline="\n") as fh:
            fh.writelines(k + "\n" for k in part)
    print(f"split {len(keys)} keys -> train {len(train)}, val {len(val)}, test {len(test)}")
    return EXIT_OK


def cmd_inspect(args: argparse.Namespace) -> int:
    manifest = Manifest.load(args.manifest)
    report = verify_outputs(manifest)
    for entry in report.entries:
        status = "ok" if entry.ok else "FAIL"
        line = f"{status:4s} {entry.image_key}"
        if entry.reasons:
            line += "  (" + "; ".join(entry.reasons) + ")"
        print(line)
    print(report.summary())
    if args.dump_segments:
        _dump_segments(manifest)
    return EXIT_OK if report.ok else EXIT_VERIFY


def _dump_segments(manifest: Manifest) -> None:
    from .segmentation import superpixel_segment

    for rec in manifest.records:
        if rec.status != "ok" or "n_segments" not in rec.spec:
            continue
        arr = load_image(manifest.input_root / rec.image_key)
        seg = superpixel_segment(arr, int(rec.spec["n_segments"]))
        dump_path = manifest.output_root / (rec.output_path + ".segments.png")
        save_png(dump_path, seg.to_label_image())
        print(f"segments -> {dump_path}")


def cmd_bench(args: argparse.Namespace) -> int:
    from .bench import run_benchmark

    run_benchmark(size=args.size, repeat=args.repeat)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "transform": cmd_transform,
        "corrupt": cmd_corrupt,
        "split": cmd_split,
        "inspect": cmd_inspect,
        "bench": cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
