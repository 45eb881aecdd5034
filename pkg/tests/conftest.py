import numpy as np
import pytest

from antga import StateTable, load_bundled_trail


@pytest.fixture(scope="session")
def bundled_grid():
    return load_bundled_trail()


# The 32-state sample automaton used as an encode/decode test vector:
# (action, next_state) per state for input 0 and input 1.
SAMPLE_TABLE_ROWS = [
    ((1, 0x0A), (0, 0x09)), ((2, 0x0E), (1, 0x03)), ((0, 0x08), (0, 0x0E)),
    ((1, 0x13), (2, 0x18)), ((0, 0x17), (0, 0x0B)), ((2, 0x17), (2, 0x0A)),
    ((1, 0x04), (0, 0x09)), ((3, 0x0A), (3, 0x17)), ((3, 0x12), (1, 0x1E)),
    ((2, 0x1E), (2, 0x16)), ((2, 0x16), (1, 0x06)), ((2, 0x13), (0, 0x16)),
    ((3, 0x03), (3, 0x0B)), ((3, 0x0E), (0, 0x14)), ((3, 0x0C), (0, 0x12)),
    ((2, 0x15), (1, 0x1F)), ((0, 0x0E), (3, 0x17)), ((1, 0x12), (1, 0x0F)),
    ((3, 0x11), (0, 0x0C)), ((2, 0x02), (0, 0x1D)), ((2, 0x0C), (3, 0x0E)),
    ((1, 0x18), (1, 0x09)), ((1, 0x01), (0, 0x08)), ((0, 0x0B), (3, 0x1A)),
    ((3, 0x13), (0, 0x11)), ((0, 0x0D), (2, 0x01)), ((0, 0x1E), (3, 0x1B)),
    ((1, 0x03), (1, 0x10)), ((2, 0x0A), (0, 0x00)), ((2, 0x06), (3, 0x0A)),
    ((2, 0x0C), (0, 0x18)), ((2, 0x10), (1, 0x04)),
]


@pytest.fixture
def sample_table():
    actions = np.zeros((32, 2), dtype=np.uint8)
    next_states = np.zeros((32, 2), dtype=np.uint8)
    for s, (e0, e1) in enumerate(SAMPLE_TABLE_ROWS):
        actions[s, 0], next_states[s, 0] = e0
        actions[s, 1], next_states[s, 1] = e1
    return StateTable(actions, next_states)
