import numpy as np
import pytest

from detbundle import BaseGrid, demo_family, rotated_interface

# one line per acceptance criterion, echoed after the run so the verdicts
# survive pytest's capture of per-test stdout
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

# integrator resolution shared by the refinement fixtures; the b-grid is the
# refined quantity, so the x-step only needs to keep RK4 error below the
# O(h^2) signal being measured
STEPS = 64


@pytest.fixture(scope="session")
def demo16():
    return demo_family(BaseGrid.torus(16, 16), steps_per_half=STEPS)


@pytest.fixture(scope="session")
def demo32():
    return demo_family(BaseGrid.torus(32, 32), steps_per_half=STEPS)


@pytest.fixture(scope="session")
def demo64():
    return demo_family(BaseGrid.torus(64, 64), steps_per_half=STEPS)


@pytest.fixture(scope="session")
def rot16(demo16):
    return rotated_interface(demo16)


@pytest.fixture(scope="session")
def rot32(demo32):
    return rotated_interface(demo32)


@pytest.fixture(scope="session")
def rot64(demo64):
    return rotated_interface(demo64)


def random_complex(rng, *shape, scale: float = 1.0) -> np.ndarray:
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def random_projection(rng, dim: int, rank: int) -> np.ndarray:
    q, _ = np.linalg.qr(random_complex(rng, dim, dim))
    f = q[:, :rank]
    return f @ f.conj().T
