import pytest

from hopf12.hopfcore import build_A1, build_C, build_double

# criterion number -> (passed, description); filled by test_acceptance.py
CRITERIA = {}


@pytest.fixture(scope="session")
def C():
    return build_C()


@pytest.fixture(scope="session")
def A1():
    return build_A1()


@pytest.fixture(scope="session")
def D():
    return build_double()


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, text = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {text}")
