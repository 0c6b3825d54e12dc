import pytest

from doily import engine


@pytest.fixture(scope="session")
def doilies3():
    """Every distinct 3-qubit doily, fully validated."""
    out = []
    engine.enumerate_doilies(3, sink=out.append, validate=True)
    return out
