from importlib import resources

import pytest

from riddlekit.knowledge import ingest


def _bundled_lines(name: str) -> list[str]:
    text = resources.files("riddlekit.data").joinpath(name).read_text("utf-8")
    return text.splitlines()


@pytest.fixture(scope="session")
def tk6():
    return ingest(_bundled_lines("tk6.triples"))


@pytest.fixture(scope="session")
def tk6_lines():
    return _bundled_lines("tk6.triples")


@pytest.fixture(scope="session")
def kb60():
    return ingest(_bundled_lines("kb60.triples"))


@pytest.fixture(scope="session")
def kb60_lines():
    return _bundled_lines("kb60.triples")
