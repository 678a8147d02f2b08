import subprocess
import sys

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "tailbound",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("tailbound")


@pytest.fixture
def run_cli():
    """Run the installed CLI as a subprocess; returns CompletedProcess."""

    def _run(*argv, **kw):
        return subprocess.run(
            [sys.executable, "-m", "tailbound", *map(str, argv)],
            capture_output=True,
            text=True,
            **kw,
        )

    return _run
