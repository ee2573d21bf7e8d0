import psutil
import pytest
import os


@pytest.fixture(scope="session", autouse=True)
def solver_params():
    """Load the test config and hand out the solver parameters."""

    # Change dir to the root of tests
    os.chdir(os.path.dirname(os.path.abspath(__file__)))

    from pleijel import SolverParams
    from pleijel.utils import configureLogging, import_config

    import_config()
    configureLogging("WARNING")

    params = SolverParams()
    assert params.zero_rtol <= 1e-12, "Tests expect the default zero tolerance."

    yield params

    from pleijel.special import clear_zero_cache

    clear_zero_cache()


@pytest.hookimpl(tryfirst=True)
def pytest_collection_modifyitems(config, items):
    # Print process count before test execution starts
    print_process_count()


@pytest.hookimpl(trylast=True)
def pytest_unconfigure(config):
    # Print process count after test execution ends
    print_process_count()


def print_process_count():
    count = sum(1 for _ in psutil.process_iter())
    print(f"Number of processes: {count}")
