from pathlib import Path

import numpy as np
import pytest

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    if not FIXTURES.exists():
        pytest.skip("fixture directory not generated")
    return FIXTURES


@pytest.fixture(scope="session")
def h2_fixture(fixtures_dir):
    from cvqe.fermion import load_fcidump

    return load_fcidump(fixtures_dir / "h2" / "h2_0.74.fcidump")


@pytest.fixture(scope="session")
def h3o_fixture(fixtures_dir):
    from cvqe.fermion import load_fcidump

    return load_fcidump(fixtures_dir / "h3o" / "h3o_r1.00.fcidump")


@pytest.fixture()
def rng():
    # fresh stream per test so outcomes do not depend on execution order
    return np.random.default_rng(20240611)
