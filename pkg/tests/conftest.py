import pytest

from affine_schur import canonical, transfer


@pytest.fixture(scope="session")
def span4():
    """Shared monomial-image workspace at rank 4 (n = 2)."""
    return transfer.MonomialSpan(2, 4)


@pytest.fixture(scope="session")
def sys22():
    return canonical.schur_system(2, 2)


@pytest.fixture(scope="session")
def sys24():
    return canonical.schur_system(2, 4)
