"""Toroidal trail world: grid, ant pose, sensing, movement, consumption.

The world is a rectangular grid of white/black cells with wraparound edges.
A trail is an ordered list of black cells; an ant standing on a cell senses
only the cell directly ahead of it and eats black cells by stepping onto
them, which turns them white.

Trail document format (line oriented, 7-bit text):

    width height start_x start_y heading     # header, heading in {N,E,S,W}
    x y                                      # one trail cell per line, in order
    ...

Lines starting with ``#`` and blank lines are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from importlib import resources

import numpy as np


class Heading(IntEnum):
    """Cardinal orientation of an ant. y grows southward, x eastward."""

    NORTH = 0
    EAST = 1
    SOUTH = 2
    WEST = 3

    def left(self) -> "Heading":
        return Heading((self - 1) % 4)

    def right(self) -> "Heading":
        return Heading((self + 1) % 4)


# (dx, dy) of one forward step per heading, in Heading order.
_DX = (0, 1, 0, -1)
_DY = (-1, 0, 1, 0)

_HEADING_CHARS = {"N": Heading.NORTH, "E": Heading.EAST, "S": Heading.SOUTH, "W": Heading.WEST}


@dataclass(frozen=True)
class Pose:
    """Position plus orientation; coordinates are always inside the grid."""

    x: int
    y: int
    heading: Heading


class TrailParseError(ValueError):
    """Raised on malformed trail documents; carries the offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass
class TrailGrid:
    """A loaded trail world.

    ``cells`` is a (height, width) uint8 array (1 = black). Loaded grids are
    read-only; the simulator works on per-trial copies (see :meth:`copy`), so
    one loaded grid can be shared across concurrent runs.
    """

    width: int
    height: int
    cells: np.ndarray
    trail_order: tuple[tuple[int, int], ...]
    start: Pose

    @property
    def total_cells(self) -> int:
        return len(self.trail_order)

    def copy(self) -> "TrailGrid":
        """Writable per-trial copy of this grid."""
        c = self.cells.copy()
        c.setflags(write=True)
        return TrailGrid(self.width, self.height, c, self.trail_order, self.start)


def load_trail(document: str) -> TrailGrid:
    """Parse a trail document into a read-only TrailGrid."""
    lines = document.splitlines()
    header = None
    header_no = 0
    coords: list[tuple[int, int]] = []
    for no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = line
            header_no = no
            continue
        parts = line.split()
        if len(parts) != 2:
            raise TrailParseError(no, f"expected 'x y', got {line!r}")
        try:
            x, y = int(parts[0]), int(parts[1])
        except ValueError:
            raise TrailParseError(no, f"non-integer coordinate in {line!r}") from None
        coords.append((x, y))

    if header is None:
        raise TrailParseError(1, "missing header line")
    parts = header.split()
    if len(parts) != 5:
        raise TrailParseError(header_no, "header must be 'width height start_x start_y heading'")
    try:
        width, height, sx, sy = (int(p) for p in parts[:4])
    except ValueError:
        raise TrailParseError(header_no, f"non-integer field in header {header!r}") from None
    if parts[4] not in _HEADING_CHARS:
        raise TrailParseError(header_no, f"heading must be one of N/E/S/W, got {parts[4]!r}")
    heading = _HEADING_CHARS[parts[4]]
    if width <= 0 or height <= 0:
        raise TrailParseError(header_no, "width and height must be positive")
    if not (0 <= sx < width and 0 <= sy < height):
        raise TrailParseError(header_no, f"start ({sx}, {sy}) out of bounds")

    cells = np.zeros((height, width), dtype=np.uint8)
    seen: set[tuple[int, int]] = set()
    # Re-walk the lines to report errors with their true line numbers.
    data_no = 0
    for no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#") or no == header_no:
            continue
        data_no += 1
        x, y = coords[data_no - 1]
        if not (0 <= x < width and 0 <= y < height):
            raise TrailParseError(no, f"coordinate ({x}, {y}) out of bounds")
        if (x, y) in seen:
            raise TrailParseError(no, f"duplicate trail cell ({x}, {y})")
        seen.add((x, y))
        cells[y, x] = 1

    cells.setflags(write=False)
    return TrailGrid(width, height, cells, tuple(coords), Pose(sx, sy, heading))


def ahead_of(pose: Pose, grid: TrailGrid) -> tuple[int, int]:
    """Coordinates of the cell directly in front of the pose, with wrap."""
    x = (pose.x + _DX[pose.heading]) % grid.width
    y = (pose.y + _DY[pose.heading]) % grid.height
    return x, y


def step_forward(pose: Pose, grid: TrailGrid) -> Pose:
    """Advance one cell along the heading, wrapping at grid edges."""
    x, y = ahead_of(pose, grid)
    return Pose(x, y, pose.heading)


def sense_ahead(grid: TrailGrid, pose: Pose) -> int:
    """1 if the cell directly ahead (with wrap) is black, else 0."""
    x, y = ahead_of(pose, grid)
    return int(grid.cells[y, x])


def consume(grid: TrailGrid, position: tuple[int, int]) -> bool:
    """Turn the cell at ``position`` white; True if it was black.

    Only valid on writable grids (see :meth:`TrailGrid.copy`); loaded grids
    are read-only by design.
    """
    x, y = position
    if grid.cells[y, x]:
        grid.cells[y, x] = 0
        return True
    return False


def bundled_trail_text() -> str:
    """Text of the trail document shipped with the package."""
    return resources.files("antga.data").joinpath("trail.txt").read_text()


def load_bundled_trail() -> TrailGrid:
    """The 89-cell benchmark trail shipped with the package."""
    return load_trail(bundled_trail_text())
