import pytest

from numsign import synth
from numsign.skeleton import Vocabulary

# filled by tests/test_acceptance.py, printed after the run
ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name, line in ACCEPTANCE_LINES.items():
        terminalreporter.write_line(f"{line}  {name}")


@pytest.fixture(scope="session")
def vocab():
    return Vocabulary.default()


@pytest.fixture(scope="session")
def golden_frames():
    return {d: synth.render(synth.golden_spec(d)) for d in range(10)}
