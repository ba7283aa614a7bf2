import pytest

from qstar.oracle import OracleConfig

# criterion number -> (passed, summary line); filled by test_acceptance
ACCEPTANCE_LINES: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def small_cfg():
    return OracleConfig(grid_b1=24, grid_radial=12, grid_angular=32, refine_iters=60)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        ok, line = ACCEPTANCE_LINES[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {line}")
