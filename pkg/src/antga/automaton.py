"""Finite-state ant: genome encoding, decoding and the scored trail trial.

An ant is a 32-state automaton. Each state holds two entries, one per sensor
input (0 = white cell ahead, 1 = black), and each entry is an action plus the
next state. The genome is a flat bit string of 448 bits:

    state 0 input-0 entry, state 0 input-1 entry, state 1 input-0 entry, ...

Each 7-bit entry is 2 action bits followed by 5 next-state bits, most
significant bit first. Action codes: 00=NOP, 01=FWD, 10=RGT, 11=LFT. Every
448-bit string decodes to a valid table (the encoding is total) and
encode/decode are exact inverses. This layout is frozen; changing it breaks
every stored genome and seeded run.

Genomes are numpy uint8 arrays of 0/1 values, length 448. The debugging hex
dump writes a genome as 112 hex characters, most significant bit first.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .trail import Heading, Pose, TrailGrid, ahead_of, sense_ahead

STATE_COUNT = 32
ENTRY_BITS = 7
GENOME_BITS = STATE_COUNT * 2 * ENTRY_BITS  # 448


class Action(IntEnum):
    NOP = 0
    FWD = 1
    RGT = 2
    LFT = 3


#: One-letter codes used in action-chain / transposon strings.
ACTION_CHARS = {Action.NOP: "N", Action.FWD: "F", Action.RGT: "R", Action.LFT: "L"}

_NEXT_WEIGHTS = np.array([16, 8, 4, 2, 1], dtype=np.uint8)


@dataclass
class StateTable:
    """Decision table: ``actions[state, input]`` and ``next_states[state, input]``."""

    actions: np.ndarray      # (32, 2) uint8, values 0..3
    next_states: np.ndarray  # (32, 2) uint8, values 0..31

    def __post_init__(self):
        self.actions = np.asarray(self.actions, dtype=np.uint8)
        self.next_states = np.asarray(self.next_states, dtype=np.uint8)
        if self.actions.shape != (STATE_COUNT, 2) or self.next_states.shape != (STATE_COUNT, 2):
            raise ValueError("state table must be 32 states x 2 inputs")
        if self.actions.max(initial=0) > 3 or self.next_states.max(initial=0) >= STATE_COUNT:
            raise ValueError("entry out of range")

    def entry(self, state: int, inp: int) -> tuple[Action, int]:
        return Action(int(self.actions[state, inp])), int(self.next_states[state, inp])

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateTable):
            return NotImplemented
        return bool(
            np.array_equal(self.actions, other.actions)
            and np.array_equal(self.next_states, other.next_states)
        )


def decode_genome(genome: np.ndarray) -> StateTable:
    """Decode a 448-bit genome into its state table. Total: never fails."""
    bits = _check_genome(genome)
    entries = bits.reshape(STATE_COUNT, 2, ENTRY_BITS)
    actions = entries[:, :, 0] * 2 + entries[:, :, 1]
    next_states = entries[:, :, 2:] @ _NEXT_WEIGHTS
    return StateTable(actions, next_states)


def encode_table(table: StateTable) -> np.ndarray:
    """Inverse of :func:`decode_genome`; bit-exact round trip both ways."""
    entries = np.zeros((STATE_COUNT, 2, ENTRY_BITS), dtype=np.uint8)
    entries[:, :, 0] = table.actions >> 1
    entries[:, :, 1] = table.actions & 1
    for j in range(5):
        entries[:, :, 2 + j] = (table.next_states >> (4 - j)) & 1
    return entries.reshape(GENOME_BITS)


def random_genome(rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, 2, size=GENOME_BITS, dtype=np.uint8)


def genome_to_hex(genome: np.ndarray) -> str:
    """112 hex characters, most significant bit first."""
    bits = _check_genome(genome)
    return np.packbits(bits).tobytes().hex()


def genome_from_hex(text: str) -> np.ndarray:
    raw = bytes.fromhex(text.strip())
    if len(raw) * 8 != GENOME_BITS:
        raise ValueError(f"expected {GENOME_BITS // 4} hex characters")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8)).astype(np.uint8)


def _check_genome(genome: np.ndarray) -> np.ndarray:
    bits = np.asarray(genome, dtype=np.uint8)
    if bits.shape != (GENOME_BITS,):
        raise ValueError(f"genome must be {GENOME_BITS} bits, got shape {bits.shape}")
    return bits


@dataclass(frozen=True)
class TrialResult:
    score: int
    steps_used: int
    final_pose: Pose


def run_ant(table: StateTable, grid: TrailGrid, max_steps: int) -> TrialResult:
    """Run one ant against a private copy of the grid.

    Per step: sense the cell ahead, look up (action, next state) for
    (current state, input), perform the action, then switch state. FWD moves
    one cell and consumes the landed-on cell if black; RGT/LFT rotate in
    place; NOP burns the step. Stops at max_steps or when the trail is fully
    consumed. Deterministic; this is the reference implementation that the
    vectorized evaluator in :mod:`antga.ga` must agree with bit for bit.
    """
    if max_steps < 0:
        raise ValueError("max_steps must be >= 0")
    work = grid.copy()
    pose = grid.start
    state = 0
    score = 0
    steps = 0
    total = grid.total_cells
    while steps < max_steps and score < total:
        inp = sense_ahead(work, pose)
        action, next_state = table.entry(state, inp)
        if action is Action.FWD:
            pose = Pose(*ahead_of(pose, work), pose.heading)
            if work.cells[pose.y, pose.x]:
                work.cells[pose.y, pose.x] = 0
                score += 1
        elif action is Action.RGT:
            pose = Pose(pose.x, pose.y, pose.heading.right())
        elif action is Action.LFT:
            pose = Pose(pose.x, pose.y, pose.heading.left())
        state = next_state
        steps += 1
    return TrialResult(score, steps, pose)


def scanning_table(loop: str = "RLLRF") -> StateTable:
    """Build the classic trail-scanning automaton from an action loop.

    The input-0 half cycles through ``loop`` (one state per letter); on
    input 1 every state steps forward and resets to state 0. The default
    RLLRF loop probes right, ahead, left, ahead, then commits one step
    forward, which suffices for contiguous turns and 1-2 cell straight gaps.
    """
    n = len(loop)
    if not 1 <= n <= STATE_COUNT:
        raise ValueError("loop length must be in [1, 32]")
    codes = {v: k for k, v in ACTION_CHARS.items()}
    actions = np.zeros((STATE_COUNT, 2), dtype=np.uint8)
    next_states = np.zeros((STATE_COUNT, 2), dtype=np.uint8)
    for i, ch in enumerate(loop):
        actions[i, 0] = codes[ch]
        next_states[i, 0] = (i + 1) % n
    actions[:, 1] = Action.FWD
    next_states[:, 1] = 0
    return StateTable(actions, next_states)
