"""Mobile-genetic-element operators over the ant decision table.

The operators treat the input-0 half of an ant's state table as a symbolic
program: starting from state 0 and always taking the input-0 transition, one
obtains a chain of (state, action) pairs that ends as soon as a state repeats.
A prefix of that chain is a *transposon* when it is long enough, contains no
NOP and no internal cycle before its last element, and terminates either in a
NOP (immature) or by the chain's closing reference back into itself (mature).

Two operators act on these sequences:

* the one-place mutator rewrites the rightmost element of a matched sequence
  with the action found ``period_n`` positions earlier (counted from the end),
  turning a terminal NOP into a periodic continuation or breaking a cycle by
  retargeting its closing reference outside the sequence;
* the two-place transposition copies a mature sequence's input-0 entries from
  a donor ant into an acceptor at the same state indices, spreading the
  sequence horizontally through the population.

Sequences longer than ``max_len`` are recognized but left untouched by the
mutator; mature ones remain transmissible. Input-1 entries are never read or
written here.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .automaton import ACTION_CHARS, STATE_COUNT, Action, StateTable
from .validation import ConfigError, check_fraction, check_int

logger = logging.getLogger("antga.mge")

_W5 = np.array([16, 8, 4, 2, 1], dtype=np.int64)
_CHARS = [ACTION_CHARS[Action(i)] for i in range(4)]
_NAMES = ["NOP", "FWD", "RGT", "LFT"]


@dataclass
class MgeConfig:
    """Bounds and rates for the transposon operators.

    min_len/max_len bound the recognized sequence length; period_n is the
    backward offset used by the one-place mutator; mge1_rate and mge2_rate
    are the fractions of the population scanned per generation by the
    one-place and two-place operators.
    """

    min_len: int = 5
    max_len: int = 11
    period_n: int = 5
    mge1_rate: float = 0.5
    mge2_rate: float = 0.5

    def validate(self) -> None:
        check_int("min_len", self.min_len, minimum=1)
        check_int("max_len", self.max_len, minimum=1, maximum=STATE_COUNT)
        check_int("period_n", self.period_n, minimum=3, maximum=8)
        check_fraction("mge1_rate", self.mge1_rate)
        check_fraction("mge2_rate", self.mge2_rate)
        if self.min_len > self.max_len:
            raise ConfigError(f"min_len {self.min_len} exceeds max_len {self.max_len}")
        if self.period_n > self.min_len:
            raise ConfigError(f"period_n {self.period_n} exceeds min_len {self.min_len}")


@dataclass(frozen=True)
class ChainElement:
    state_index: int
    action: Action
    next_state: int


@dataclass(frozen=True)
class ActionChain:
    """Input-0 walk from state 0 until a state repeats.

    ``revisit`` is the 1-based position of the element whose state the final
    transition loops back to, or None if the walk ended by length alone. For
    a full 32-state table the walk always closes on a visited state, so
    revisit is always set in practice; None is kept for contract totality.
    """

    elements: tuple[ChainElement, ...]
    revisit: int | None

    @property
    def code(self) -> str:
        return "".join(ACTION_CHARS[e.action] for e in self.elements)

    def __len__(self) -> int:
        return len(self.elements)


class TransposonKind(Enum):
    MATURE = "mature"
    IMMATURE = "immature"
    OVERLONG = "overlong"


@dataclass(frozen=True)
class Transposon:
    """A matched sequence: its action code, covered states and class."""

    code: str
    states: tuple[int, ...]
    kind: TransposonKind
    cycle_target: int | None = None  # 1-based, mature in-range sequences only

    @property
    def is_mature_shaped(self) -> bool:
        """True for cycle-terminated sequences of any length (transmissible)."""
        return self.kind is TransposonKind.MATURE or (
            self.kind is TransposonKind.OVERLONG and not self.code.endswith("N")
        )


class Mge1Event(Enum):
    NOP_FILLED = "nop_filled"
    CYCLE_BROKEN = "cycle_broken"
    LEFT_INTACT = "left_intact"
    NO_MATCH = "no_match"


class Mge2Event(Enum):
    COPIED = "copied"
    NO_DONOR_TRANSPOSON = "no_donor_transposon"


# ---------------------------------------------------------------------------
# Chain walking and matching. The list-based helpers are shared between the
# table-level operators and the genome-level fast path used per generation;
# both must stay behaviorally identical.
# ---------------------------------------------------------------------------

def _walk(a0: list[int], n0: list[int]) -> tuple[list[int], list[int], int]:
    """Follow input-0 transitions from state 0 until a state repeats.

    Returns (visited states, their actions, 1-based revisit position).
    """
    pos_of = {}
    states: list[int] = []
    s = 0
    while True:
        states.append(s)
        pos_of[s] = len(states)
        nxt = n0[s]
        if nxt in pos_of:
            return states, [a0[t] for t in states], pos_of[nxt]
        s = nxt


def _match(actions: list[int], revisit: int | None, cfg: MgeConfig):
    """Classify the candidate anchored at the chain start.

    The candidate is the maximal NOP-free prefix plus its terminating NOP
    element if one exists, otherwise the whole chain. Returns None or
    (kind, candidate length, cycle target).
    """
    try:
        length = actions.index(0) + 1  # through the first NOP
        ends_nop = True
    except ValueError:
        length = len(actions)
        ends_nop = False
    if length < cfg.min_len:
        return None
    if not ends_nop and revisit is None:
        return None  # no terminator: fails the definition
    if length > cfg.max_len:
        return TransposonKind.OVERLONG, length, None
    if ends_nop:
        return TransposonKind.IMMATURE, length, None
    return TransposonKind.MATURE, length, revisit


def _zero_half(genome: np.ndarray) -> tuple[list[int], list[int]]:
    """Decode only the input-0 entries of a genome, as plain int lists."""
    e = genome.reshape(STATE_COUNT, 2, 7)[:, 0, :]
    a0 = (e[:, 0] * 2 + e[:, 1]).tolist()
    n0 = (e[:, 2:] @ _W5).tolist()
    return a0, n0


def extract_chain(table: StateTable) -> ActionChain:
    """Input-0 action chain of a table, starting at state 0."""
    a0 = table.actions[:, 0].tolist()
    n0 = table.next_states[:, 0].tolist()
    states, actions, revisit = _walk(a0, n0)
    elements = tuple(
        ChainElement(s, Action(a), n0[s]) for s, a in zip(states, actions)
    )
    return ActionChain(elements, revisit)


def match_transposon(chain: ActionChain, cfg: MgeConfig) -> Transposon | None:
    """First (and only) definition-matching sequence anchored at the chain start."""
    actions = [int(e.action) for e in chain.elements]
    m = _match(actions, chain.revisit, cfg)
    if m is None:
        return None
    kind, length, target = m
    code = "".join(_CHARS[a] for a in actions[:length])
    states = tuple(e.state_index for e in chain.elements[:length])
    return Transposon(code, states, kind, target)


def scan_genome(genome: np.ndarray, cfg: MgeConfig) -> Transposon | None:
    """extract_chain + match_transposon without building a StateTable."""
    a0, n0 = _zero_half(genome)
    states, actions, revisit = _walk(a0, n0)
    m = _match(actions, revisit, cfg)
    if m is None:
        return None
    kind, length, target = m
    code = "".join(_CHARS[a] for a in actions[:length])
    return Transposon(code, tuple(states[:length]), kind, target)


# ---------------------------------------------------------------------------
# One-place mutator.
# ---------------------------------------------------------------------------

def _plan_mge1(a0: list[int], n0: list[int], cfg: MgeConfig, rng: np.random.Generator):
    """Decide the single-entry edit for one ant.

    Returns (event, edit state, new action, new next state or None,
    walk results for logging). Consumes randomness only when a cycle is
    actually broken (one integer draw for the outside retarget).
    """
    states, actions, revisit = _walk(a0, n0)
    m = _match(actions, revisit, cfg)
    if m is None:
        return Mge1Event.NO_MATCH, None, None, None, (states, actions)
    kind, length, _ = m
    if kind is TransposonKind.OVERLONG:
        return Mge1Event.LEFT_INTACT, None, None, None, (states, actions)
    source_action = actions[length - cfg.period_n]  # position L - N + 1, 1-based
    last_state = states[length - 1]
    if kind is TransposonKind.IMMATURE:
        return Mge1Event.NOP_FILLED, last_state, source_action, None, (states, actions)
    covered = set(states)  # mature candidate covers the whole chain
    outside = [s for s in range(STATE_COUNT) if s not in covered]
    if not outside:
        return Mge1Event.LEFT_INTACT, None, None, None, (states, actions)
    new_next = outside[int(rng.integers(0, len(outside)))]
    return Mge1Event.CYCLE_BROKEN, last_state, source_action, new_next, (states, actions)


def mge1_mutate(
    table: StateTable, cfg: MgeConfig, rng: np.random.Generator
) -> tuple[StateTable, Mge1Event]:
    """Apply the one-place mutator to a table, in place.

    A terminal NOP takes the action of the element period_n positions from
    the end (the sequence continues past it and can grow); a terminal cycle
    takes that action too and its closing reference is retargeted to a
    uniformly chosen state outside the sequence. Sequences longer than
    max_len are left intact; only the input-0 half is ever written.
    """
    a0 = table.actions[:, 0].tolist()
    n0 = table.next_states[:, 0].tolist()
    event, state, action, new_next, _ = _plan_mge1(a0, n0, cfg, rng)
    if event is Mge1Event.NOP_FILLED:
        table.actions[state, 0] = action
    elif event is Mge1Event.CYCLE_BROKEN:
        table.actions[state, 0] = action
        table.next_states[state, 0] = new_next
    return table, event


# ---------------------------------------------------------------------------
# Two-place transposition.
# ---------------------------------------------------------------------------

def mge2_transpose(
    donor: StateTable, acceptor: StateTable, cfg: MgeConfig
) -> tuple[StateTable, Mge2Event]:
    """Copy the donor's mature sequence into the acceptor, in place.

    Only cycle-terminated sequences of length >= min_len transmit (overlong
    ones included); every covered state's input-0 action and next state are
    written into the acceptor at the same indices, whatever was there before.
    Immature or absent sequences leave the acceptor untouched.
    """
    a0 = donor.actions[:, 0].tolist()
    n0 = donor.next_states[:, 0].tolist()
    states, actions, revisit = _walk(a0, n0)
    m = _match(actions, revisit, cfg)
    if m is None or m[0] is TransposonKind.IMMATURE:
        return acceptor, Mge2Event.NO_DONOR_TRANSPOSON
    covered = states[: m[1]]
    for s in covered:
        acceptor.actions[s, 0] = a0[s]
        acceptor.next_states[s, 0] = n0[s]
    return acceptor, Mge2Event.COPIED


# ---------------------------------------------------------------------------
# Per-generation phase over the whole population (genome-level fast path).
# ---------------------------------------------------------------------------

def _write_entry(view: np.ndarray, state: int, action: int, next_state: int) -> None:
    """Write one input-0 entry (7 bits) into a genome bit view."""
    e = view[state, 0]
    e[0] = action >> 1
    e[1] = action & 1
    for j in range(5):
        e[2 + j] = (next_state >> (4 - j)) & 1


def _log_pattern(ant: int, flavor: str, states: list[int], actions: list[int],
                 n0: list[int], length: int) -> None:
    lines = [f"-Check Ant #{ant} to pattern. Find pattern with {flavor}. Pattern is:"]
    for s, a in zip(states[:length], actions[:length]):
        lines.append(f"state #{s}...{_NAMES[a]}/#{n0[s]}")
    logger.debug("%s", "\n".join(lines))


def apply_mge_phase(
    genomes: np.ndarray, cfg: MgeConfig, rng: np.random.Generator
) -> tuple[np.ndarray, float, float]:
    """Run one generation of MGE activity over the population, in place.

    First floor(mge2_rate * P) transposition attempts, each on a uniformly
    chosen ordered pair of distinct ants (first scanned as donor); then
    floor(mge1_rate * P) one-place mutations on uniformly chosen ants.
    Returns the fractions of the population whose genome actually changed
    under each operator. Randomness is consumed in a fixed order: two index
    draws per transposition attempt, one per mutation attempt, plus one
    retarget draw whenever a cycle is broken.
    """
    pop = genomes.shape[0]
    view = genomes.reshape(pop, STATE_COUNT, 2, 7)
    verbose = logger.isEnabledFor(logging.DEBUG)

    touched2: set[int] = set()
    n2 = int(cfg.mge2_rate * pop) if pop >= 2 else 0  # no distinct pair below 2
    for _ in range(n2):
        donor = int(rng.integers(0, pop))
        acceptor = int(rng.integers(0, pop - 1))
        if acceptor >= donor:
            acceptor += 1
        a0, n0 = _zero_half(genomes[donor])
        states, actions, revisit = _walk(a0, n0)
        m = _match(actions, revisit, cfg)
        if m is None or m[0] is TransposonKind.IMMATURE:
            continue
        covered = states[: m[1]]
        before = view[acceptor, covered, 0].copy()
        view[acceptor, covered, 0] = view[donor, covered, 0]
        if not np.array_equal(before, view[acceptor, covered, 0]):
            touched2.add(acceptor)
            if verbose:
                _log_pattern(donor, "cycle", states, actions, n0, m[1])
                logger.debug("Replicate pattern into Ant #%d", acceptor)

    touched1: set[int] = set()
    n1 = int(cfg.mge1_rate * pop)
    for _ in range(n1):
        ant = int(rng.integers(0, pop))
        a0, n0 = _zero_half(genomes[ant])
        event, state, action, new_next, walked = _plan_mge1(a0, n0, cfg, rng)
        if event is Mge1Event.NOP_FILLED:
            if verbose:
                states, actions = walked
                length = actions.index(0) + 1
                _log_pattern(ant, "NOP", states, actions, n0, length)
                src = states[length - cfg.period_n]
                logger.debug("Change NOP to node #%d action\nstate #%d...%s/#%d",
                             src, state, _NAMES[action], n0[state])
            _write_entry(view[ant], state, action, n0[state])
            touched1.add(ant)
        elif event is Mge1Event.CYCLE_BROKEN:
            if verbose:
                states, actions = walked
                _log_pattern(ant, "cycle", states, actions, n0, len(states))
                src = states[len(states) - cfg.period_n]
                logger.debug("Change last action to node #%d action: state #%d...%s/#%d",
                             src, state, _NAMES[actions[-1]], n0[state])
            _write_entry(view[ant], state, action, new_next)
            touched1.add(ant)

    return genomes, len(touched1) / pop, len(touched2) / pop
