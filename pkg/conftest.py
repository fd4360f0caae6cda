import pytest
import golayft
from golayft.circuits import prep
from golayft.code import css


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run Golay-scale reproductions")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture()
def test_ops(tmpdir):
    """ Steane-scale ops writing into a fresh temporary directory """
    return initialize_ops(tmpdir)


def initialize_ops(tmpdir):
    """ small Steane-scale runs that finish in seconds """
    ops = golayft.default_ops()
    ops.update(
        {
            "code": "steane",
            "prep_method": "pair",
            "save_path0": str(tmpdir),
            "progress": False,
            "trials": 2000,
            "batches": 4,
            "p_values": [1e-3],
            "k_good_profile": "desk",
            "grid_points": 20,
            "curve_points": 5,
            "check_points": 10,
        }
    )
    return ops


@pytest.fixture(scope="session")
def golay():
    return css.golay_code()


@pytest.fixture(scope="session")
def steane():
    return css.steane_code()


@pytest.fixture(scope="session")
def steane_prep():
    return prep.steane_latin_prep()


@pytest.fixture(scope="session")
def overlap_prep():
    return prep.overlap_prep_golay()
