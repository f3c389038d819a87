import pytest

from dualpg.verify import run_verification


@pytest.fixture(scope="session")
def verification_results():
    """Full verification run, shared by the CLI and acceptance tests."""
    return {r.name: r for r in run_verification()}
