#!/usr/bin/env python3
"""Generate and verify the bundled benchmark trail (src/antga/data/trail.txt).

Layout: 89 cells on a 32x32 torus, start (0, 0) facing East, cell 1 adjacent
to the start. Cells 1..64 form a corridor in the classic style: straight
runs, contiguous turns, then single-cell and double-cell gaps appearing
mid-run as the trail progresses. The corridor is fully consumable by the
plain RLLRF scanning automaton within the 330-step budget (verified below),
and it scores exactly 64 there: cell 64 -> 65 jumps (-3, +3) diagonally and
65..89 continue with turns, gaps and two final scattered cells, all kept at
orthogonal distance >= 2 from the corridor so a corridor-following ant is
never lured off before finishing it.

Run from the repository root:  python tools/build_trail.py
"""

from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from antga.automaton import run_ant, scanning_table  # noqa: E402
from antga.trail import load_trail  # noqa: E402

WIDTH = HEIGHT = 32
START = (0, 0, "E")


def corridor() -> list[tuple[int, int]]:
    """Cells 1..64."""
    cells = []
    cells += [(x, 0) for x in range(1, 9)]            # 1-8    east run
    cells += [(8, y) for y in range(1, 6)]            # 9-13   right turn, south
    cells += [(8, y) for y in range(7, 11)]           # 14-17  1-gap south
    cells += [(x, 10) for x in range(9, 13)]          # 18-21  left turn, east
    cells += [(x, 10) for x in range(14, 18)]         # 22-25  1-gap east
    cells += [(17, y) for y in range(11, 14)]         # 26-28  right turn, south
    cells += [(17, y) for y in range(15, 18)]         # 29-31  1-gap south
    cells += [(17, y) for y in range(20, 22)]         # 32-33  2-gap south
    cells += [(x, 21) for x in range(16, 13, -1)]     # 34-36  right turn, west
    cells += [(x, 21) for x in range(12, 9, -1)]      # 37-39  1-gap west
    cells += [(10, y) for y in range(22, 25)]         # 40-42  left turn, south
    cells += [(10, 27)]                               # 43     2-gap south
    cells += [(x, 27) for x in range(11, 13)]         # 44-45  left turn, east
    cells += [(x, 27) for x in range(14, 16)]         # 46-47  1-gap east
    cells += [(x, 27) for x in range(18, 20)]         # 48-49  2-gap east
    cells += [(19, y) for y in range(26, 24, -1)]     # 50-51  left turn, north
    cells += [(19, y) for y in range(22, 20, -1)]     # 52-53  2-gap north
    cells += [(x, 21) for x in range(20, 22)]         # 54-55  right turn, east
    cells += [(x, 21) for x in range(24, 27)]         # 56-58  2-gap east
    cells += [(26, y) for y in range(22, 25)]         # 59-61  right turn, south
    cells += [(26, y) for y in range(26, 29)]         # 62-64  1-gap south
    return cells


def late_section() -> list[tuple[int, int]]:
    """Cells 65..89: an irregular westward zigzag of diagonal hops.

    No two consecutive cells share a row or column (nothing here is
    collectable by walking straight lines), every hop is within a 2-cell
    Chebyshev reach except the two hard jumps, and every cell keeps
    orthogonal distance >= 2 from the corridor (wrap included), so neither
    the plain scanner nor corridor-bred ants are lured in; systematic
    neighborhood sweeps collect it chain-wise.
    """
    return [
        (23, 31), (22, 30), (21, 31),            # 65-67  after the (-3,+3) jump
        (18, 29),                                # 68     hard jump (-3,-2)
        (17, 31), (16, 30), (15, 31), (14, 29),  # 69-72
        (13, 30), (12, 29), (11, 31), (10, 30),  # 73-76
        (9, 29), (8, 30), (7, 29), (6, 30),      # 77-80
        (5, 28), (4, 29), (3, 27), (2, 28),      # 81-84
        (1, 26), (0, 27), (1, 24), (0, 22),      # 85-88
        (2, 21),                                 # 89
    ]


def build_document() -> str:
    cells = corridor() + late_section()
    assert len(cells) == 89, len(cells)
    assert len(set(cells)) == 89, "duplicate cell"
    assert all(0 <= x < WIDTH and 0 <= y < HEIGHT for x, y in cells), "out of bounds"
    assert cells[0] == (1, 0), "cell 1 must sit directly ahead of the start"

    lines = [
        "# Benchmark trail: 89 cells on a 32x32 torus.",
        "# Cells 1..64: corridor of straights, contiguous turns, then 1- and",
        "# 2-cell gaps (consumable by the plain RLLRF scanning automaton).",
        "# Cell 64 -> 65: (-3,+3) diagonal gap; 67 -> 68: (-3,-2) diagonal gap;",
        "# 65..89 resume turns and gaps, ending in two scattered cells.",
        "# Generated by tools/build_trail.py; regenerate rather than hand-edit.",
        f"{WIDTH} {HEIGHT} {START[0]} {START[1]} {START[2]}",
    ]
    lines += [f"{x} {y}" for x, y in cells]
    return "\n".join(lines) + "\n"


def consumed_by_scanner(document: str, loop: str, budget: int):
    """Independent step-by-step walk returning (consumed cells, step at 64)."""
    grid = load_trail(document)
    table = scanning_table(loop)
    cells = {c: True for c in grid.trail_order}
    x, y, h = grid.start.x, grid.start.y, int(grid.start.heading)
    dx, dy = (0, 1, 0, -1), (-1, 0, 1, 0)
    state = 0
    eaten = set()
    step_at_64 = None
    for step in range(1, budget + 1):
        ax, ay = (x + dx[h]) % WIDTH, (y + dy[h]) % HEIGHT
        inp = 1 if cells.get((ax, ay), False) else 0
        action, nxt = table.entry(state, inp)
        if action.name == "FWD":
            x, y = ax, ay
            if cells.get((x, y), False):
                cells[(x, y)] = False
                eaten.add((x, y))
                if len(eaten) == 64 and step_at_64 is None:
                    step_at_64 = step
        elif action.name == "RGT":
            h = (h + 1) % 4
        elif action.name == "LFT":
            h = (h + 3) % 4
        state = nxt
    return eaten, step_at_64


def verify(document: str) -> None:
    grid = load_trail(document)
    assert grid.total_cells == 89

    # The plain scanner must clear exactly the corridor (never lured onto the
    # late section) and stall before cell 65, with headroom in the budget.
    result = run_ant(scanning_table("RLLRF"), grid, 330)
    assert result.score == 64, f"RLLRF scanner scored {result.score}, want exactly 64"
    eaten, step_at_64 = consumed_by_scanner(document, "RLLRF", 330)
    assert eaten == set(grid.trail_order[:64]), "scanner strayed off the corridor"
    assert step_at_64 is not None and step_at_64 <= 300, step_at_64
    print(f"RLLRF scanner: corridor cleared at step {step_at_64} (budget 330)")


def main() -> None:
    document = build_document()
    verify(document)
    out = Path(__file__).resolve().parent.parent / "src" / "antga" / "data" / "trail.txt"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(document, newline="\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
