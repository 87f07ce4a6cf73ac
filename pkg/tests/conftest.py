from importlib import resources

import pytest


@pytest.fixture(scope="session")
def fixtures_dir():
    return resources.files("conic_butterfly") / "fixtures"


@pytest.fixture(scope="session")
def fixture_text(fixtures_dir):
    def load(name: str) -> str:
        return (fixtures_dir / f"{name}.scn").read_text(encoding="utf-8")

    return load
