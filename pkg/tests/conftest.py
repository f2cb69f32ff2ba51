import sys
from pathlib import Path

import pytest

from dihedral import _kernels

sys.path.insert(0, str(Path(__file__).parent))

KERNELS = _kernels.backends()


@pytest.fixture(params=sorted(KERNELS))
def backend(request, monkeypatch):
    """Route every kernel call through one backend for the duration of a test."""
    mod = KERNELS[request.param]
    for name in ("segment_distance", "sweep_pair", "sweep_range", "first_violation"):
        monkeypatch.setattr(_kernels, name, getattr(mod, name))
    return request.param


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
