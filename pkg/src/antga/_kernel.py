"""Numba-compiled batch trial evaluator.

Evaluating a population is the hot loop of every experiment (population x
max_steps automaton steps per generation), so the per-ant simulation is
compiled with numba. The semantics must match :func:`antga.automaton.run_ant`
exactly; tests compare the two on random genomes. If numba is unavailable the
caller falls back to the pure-Python reference.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


@njit(cache=True)
def _run_batch(actions, next_states, cells, sx, sy, sh, max_steps, total,
               scores, steps_used, finals):  # pragma: no cover - compiled
    pop = actions.shape[0]
    height, width = cells.shape
    for p in range(pop):
        grid = cells.copy()
        x, y, h = sx, sy, sh
        state = 0
        score = 0
        steps = 0
        while steps < max_steps and score < total:
            if h == 0:
                ax, ay = x, (y + height - 1) % height
            elif h == 1:
                ax, ay = (x + 1) % width, y
            elif h == 2:
                ax, ay = x, (y + 1) % height
            else:
                ax, ay = (x + width - 1) % width, y
            inp = 1 if grid[ay, ax] else 0
            act = actions[p, state, inp]
            nxt = next_states[p, state, inp]
            if act == 1:  # FWD
                x, y = ax, ay
                if grid[y, x]:
                    grid[y, x] = 0
                    score += 1
            elif act == 2:  # RGT
                h = (h + 1) % 4
            elif act == 3:  # LFT
                h = (h + 3) % 4
            state = nxt
            steps += 1
        scores[p] = score
        steps_used[p] = steps
        finals[p, 0] = x
        finals[p, 1] = y
        finals[p, 2] = h


def run_batch(actions: np.ndarray, next_states: np.ndarray, cells: np.ndarray,
              start_x: int, start_y: int, start_h: int, max_steps: int,
              total: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Run every decoded ant against its own copy of ``cells``.

    Returns (scores, steps_used, final poses as (x, y, heading) rows).
    """
    pop = actions.shape[0]
    scores = np.zeros(pop, dtype=np.int64)
    steps_used = np.zeros(pop, dtype=np.int64)
    finals = np.zeros((pop, 3), dtype=np.int64)
    _run_batch(
        np.ascontiguousarray(actions),
        np.ascontiguousarray(next_states),
        np.ascontiguousarray(cells),
        start_x, start_y, start_h, max_steps, total,
        scores, steps_used, finals,
    )
    return scores, steps_used, finals
