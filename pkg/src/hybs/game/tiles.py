"""Kitchen layout: tile kinds, the text map format, and validation.

Map glyphs: ``.`` floor, ``#`` counter, ``U`` pot, ``O``/``T``/``P``
ingredient dispensers, ``D`` plate station, ``1``-``4`` customer seats,
``C`` center marker (walkable chef spawn).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ParseError, ValidationError
from .rules import ONION, POTATO, TOMATO

FLOOR = "floor"
COUNTER = "counter"
POT = "pot"
DISPENSER = "dispenser"
PLATE_STATION = "plate_station"
SEAT = "seat"
CENTER = "center"

GLYPHS = {
    ".": (FLOOR, None),
    "#": (COUNTER, None),
    "U": (POT, None),
    "O": (DISPENSER, ONION),
    "T": (DISPENSER, TOMATO),
    "P": (DISPENSER, POTATO),
    "D": (PLATE_STATION, None),
    "1": (SEAT, 1),
    "2": (SEAT, 2),
    "3": (SEAT, 3),
    "4": (SEAT, 4),
    "C": (CENTER, None),
}
GLYPH_OF_KIND = {v: k for k, v in GLYPHS.items()}

# Tiles the chef can stand on.
WALKABLE = {FLOOR, CENTER}

NORTH, SOUTH, EAST, WEST = "N", "S", "E", "W"
DIRECTIONS = (NORTH, SOUTH, EAST, WEST)
DIR_DELTA = {NORTH: (-1, 0), SOUTH: (1, 0), EAST: (0, 1), WEST: (0, -1)}


@dataclass(frozen=True)
class Tile:
    kind: str
    arg: object = None  # ingredient kind for dispensers, seat number for seats


@dataclass(frozen=True)
class TileMap:
    width: int
    height: int
    tiles: tuple[tuple[Tile, ...], ...]  # row-major
    text: str = field(repr=False, default="")

    def tile(self, pos: tuple[int, int]) -> Tile:
        return self.tiles[pos[0]][pos[1]]

    def in_bounds(self, pos: tuple[int, int]) -> bool:
        return 0 <= pos[0] < self.height and 0 <= pos[1] < self.width

    def is_walkable(self, pos: tuple[int, int]) -> bool:
        return self.in_bounds(pos) and self.tile(pos).kind in WALKABLE

    def positions_of(self, kind: str) -> tuple[tuple[int, int], ...]:
        out = []
        for r, row in enumerate(self.tiles):
            for c, t in enumerate(row):
                if t.kind == kind:
                    out.append((r, c))
        return tuple(out)

    @property
    def pots(self) -> tuple[tuple[int, int], ...]:
        return self.positions_of(POT)

    @property
    def counters(self) -> tuple[tuple[int, int], ...]:
        return self.positions_of(COUNTER)

    @property
    def center(self) -> tuple[int, int]:
        return self.positions_of(CENTER)[0]

    def dispenser(self, ingredient: str) -> tuple[int, int]:
        for pos in self.positions_of(DISPENSER):
            if self.tile(pos).arg == ingredient:
                return pos
        raise KeyError(ingredient)

    def seat_tile(self, seat: int) -> tuple[int, int]:
        for pos in self.positions_of(SEAT):
            if self.tile(pos).arg == seat:
                return pos
        raise KeyError(seat)


def neighbors(pos: tuple[int, int]) -> list[tuple[str, tuple[int, int]]]:
    r, c = pos
    return [(d, (r + dr, c + dc)) for d, (dr, dc) in DIR_DELTA.items()]


def load_layout(text: str) -> TileMap:
    """Parse and validate a text kitchen map."""
    rows = [line for line in text.splitlines() if line.strip()]
    if not rows:
        raise ParseError("empty layout")
    width = len(rows[0])
    grid: list[tuple[Tile, ...]] = []
    for r, line in enumerate(rows):
        if len(line) != width:
            raise ParseError(f"ragged row {r}: expected width {width}, got {len(line)}")
        row = []
        for c, glyph in enumerate(line):
            if glyph not in GLYPHS:
                raise ParseError(f"unknown glyph {glyph!r} at row {r}, col {c}")
            kind, arg = GLYPHS[glyph]
            row.append(Tile(kind, arg))
        grid.append(tuple(row))
    layout = TileMap(width=width, height=len(rows), tiles=tuple(grid), text="\n".join(rows) + "\n")
    _validate(layout)
    return layout


def _validate(layout: TileMap) -> None:
    h, w = layout.height, layout.width
    if h < 3 or w < 3:
        raise ValidationError("layout must be at least 3x3")
    for r in range(h):
        for c in range(w):
            if (r in (0, h - 1) or c in (0, w - 1)) and layout.tiles[r][c].kind in WALKABLE:
                raise ValidationError(f"border tile at ({r},{c}) must be non-floor")

    if not layout.pots:
        raise ValidationError("layout has no pot")
    for ingredient in (ONION, TOMATO, POTATO):
        found = [p for p in layout.positions_of(DISPENSER) if layout.tile(p).arg == ingredient]
        if len(found) != 1:
            raise ValidationError(f"need exactly one {ingredient} dispenser, found {len(found)}")
    seats = layout.positions_of(SEAT)
    if sorted(layout.tile(p).arg for p in seats) != [1, 2, 3, 4]:
        raise ValidationError("need exactly four customer seats numbered 1-4")
    centers = layout.positions_of(CENTER)
    if len(centers) != 1:
        raise ValidationError(f"need exactly one center marker, found {len(centers)}")
    if not layout.positions_of(PLATE_STATION):
        raise ValidationError("layout has no plate station")

    # Flood fill from the center marker; every interactable must touch the
    # reachable floor region.
    reachable: set[tuple[int, int]] = set()
    stack = [layout.center]
    while stack:
        pos = stack.pop()
        if pos in reachable or not layout.is_walkable(pos):
            continue
        reachable.add(pos)
        stack.extend(p for _, p in neighbors(pos))
    for kind in (POT, DISPENSER, PLATE_STATION, SEAT):
        for pos in layout.positions_of(kind):
            if not any(n in reachable for _, n in neighbors(pos)):
                raise ValidationError(f"{kind} at {pos} is unreachable from the center")


DEFAULT_LAYOUT = """\
##1#2#3#4##
#.........#
T.........#
#....C..U.#
O.........#
#.........#
####D##UP##
"""
