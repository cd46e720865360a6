import sys

import pytest

from rank1.params import ParameterSpec, stage


def chacon_family(e, tail=(0,)):
    """``T_e``: stage n is ``s=(0,1)`` where ``e_n = 0`` and ``s=(1,0)`` where ``e_n = 1``."""
    pick = {0: stage(3, 0, 1), 1: stage(3, 1, 0)}
    return ParameterSpec(tuple(pick[x] for x in e), tuple(pick[x] for x in tail))


@pytest.fixture
def chacon():
    return ParameterSpec.periodic(stage(3, 0, 1))


@pytest.fixture
def mirror():
    return ParameterSpec.periodic(stage(3, 1, 0))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
