"""Transform parameterization.

Each of the seven transforms takes a subset of three parameters: shuffle
probability `p`, tile edge `grid_size` (block transforms), segment count
`n_segments` (segmentation transforms), plus the `swap` switch that
enables/disables the unit-level permutation on the transforms that have
one.  A TransformSpec carries exactly the parameters its kind uses;
anything else is rejected by name.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Mapping


class Kind(str, Enum):
    FULL_RANDOM_SHUFFLE = "full-random-shuffle"
    GRID_SHUFFLE = "grid-shuffle"
    WITHIN_GRID_SHUFFLE = "within-grid-shuffle"
    LOCAL_STRUCTURE_SHUFFLE = "local-structure-shuffle"
    COLOR_FLATTEN = "color-flatten"
    SEGMENTATION_DISPLACEMENT_SHUFFLE = "segmentation-displacement-shuffle"
    SEGMENTATION_WITHIN_SHUFFLE = "segmentation-within-shuffle"


# parameter names used by each kind: (required, optional)
_PARAMS: dict[Kind, tuple[frozenset[str], frozenset[str]]] = {
    Kind.FULL_RANDOM_SHUFFLE: (frozenset({"p"}), frozenset()),
    Kind.GRID_SHUFFLE: (frozenset({"grid_size"}), frozenset({"swap"})),
    Kind.WITHIN_GRID_SHUFFLE: (frozenset({"p", "grid_size"}), frozenset()),
    Kind.LOCAL_STRUCTURE_SHUFFLE: (frozenset({"p", "grid_size"}), frozenset({"swap"})),
    Kind.COLOR_FLATTEN: (frozenset(), frozenset()),
    Kind.SEGMENTATION_DISPLACEMENT_SHUFFLE: (frozenset({"n_segments"}), frozenset({"swap"})),
    Kind.SEGMENTATION_WITHIN_SHUFFLE: (frozenset({"p", "n_segments"}), frozenset()),
}

# kinds whose output pixel-tuple multiset always equals the input's
MULTISET_PRESERVING = frozenset(
    {
        Kind.FULL_RANDOM_SHUFFLE,
        Kind.GRID_SHUFFLE,
        Kind.WITHIN_GRID_SHUFFLE,
        Kind.LOCAL_STRUCTURE_SHUFFLE,
        Kind.SEGMENTATION_WITHIN_SHUFFLE,
    }
)


def kinds() -> list[str]:
    """The seven transform kind names, in canonical order."""
    return [k.value for k in Kind]


@dataclass(frozen=True)
class TransformSpec:
    kind: Kind
    p: float | None = None
    grid_size: int | None = None
    n_segments: int | None = None
    swap: bool | None = None

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        required, optional = _PARAMS[kind]
        for name in ("p", "grid_size", "n_segments", "swap"):
            value = getattr(self, name)
            if name in required:
                if value is None:
                    raise ValueError(f"{kind.value} requires parameter {name!r}")
            elif name not in optional and value is not None:
                raise ValueError(f"{kind.value} does not take parameter {name!r}")
        if "swap" in optional and self.swap is None:
            object.__setattr__(self, "swap", True)
        if self.p is not None:
            p = float(self.p)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"p must be in [0, 1], got {self.p}")
            object.__setattr__(self, "p", p)
        if self.grid_size is not None:
            g = int(self.grid_size)
            if g < 1:
                raise ValueError(f"grid_size must be >= 1, got {self.grid_size}")
            object.__setattr__(self, "grid_size", g)
        if self.n_segments is not None:
            s = int(self.n_segments)
            if s < 1:
                raise ValueError(f"n_segments must be >= 1, got {self.n_segments}")
            object.__setattr__(self, "n_segments", s)

    def to_mapping(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind.value}
        for name in ("p", "grid_size", "n_segments", "swap"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        return out

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Any]) -> "TransformSpec":
        m = dict(mapping)
        try:
            kind = Kind(m.pop("kind"))
        except KeyError:
            raise ValueError("spec mapping is missing 'kind'") from None
        except ValueError:
            raise ValueError(
                f"unknown kind {mapping.get('kind')!r}; valid kinds: {', '.join(kinds())}"
            ) from None
        known = {"p", "grid_size", "n_segments", "swap"}
        unknown = set(m) - known
        if unknown:
            raise ValueError(f"unknown spec field(s): {', '.join(sorted(unknown))}")
        return cls(kind=kind, **m)
