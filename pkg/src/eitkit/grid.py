"""Square tile partition with absorb-into-last remainder handling.

A tile edge that does not divide the image leaves remainder strips on
the right/bottom; those strips are absorbed into the last tile column/
row instead of forming padded or truncated tiles, so every pixel belongs
to exactly one tile and tile moves stay lossless.  A tile edge larger
than the image collapses to the single-tile grid.
"""

from __future__ import annotations

from dataclasses import dataclass


def _axis_tiles(extent: int, edge: int) -> int:
    return max(1, extent // edge)


@dataclass(frozen=True)
class TileGrid:
    width: int
    height: int
    tile_edge: int
    cols: int
    rows: int

    def tile_bounds(self, row: int, col: int) -> tuple[int, int, int, int]:
        """(x0, y0, w, h) of a tile; last row/column absorb the remainder."""
        x0 = col * self.tile_edge
        y0 = row * self.tile_edge
        w = self.tile_edge if col < self.cols - 1 else self.width - x0
        h = self.tile_edge if row < self.rows - 1 else self.height - y0
        return x0, y0, w, h

    def tiles(self):
        """All (row, col, x0, y0, w, h) in raster order."""
        for r in range(self.rows):
            for c in range(self.cols):
                x0, y0, w, h = self.tile_bounds(r, c)
                yield r, c, x0, y0, w, h


def tile_partition(width: int, height: int, tile_edge: int) -> TileGrid:
    if width < 1 or height < 1 or tile_edge < 1:
        raise ValueError("width, height and tile_edge must all be >= 1")
    return TileGrid(
        width=width,
        height=height,
        tile_edge=tile_edge,
        cols=_axis_tiles(width, tile_edge),
        rows=_axis_tiles(height, tile_edge),
    )
