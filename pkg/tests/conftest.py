import pytest

from dualirs.config import default_params


@pytest.fixture
def params():
    """Default setup with P_F = 10 dBm."""
    return default_params().with_pf_dbm(10.0)
