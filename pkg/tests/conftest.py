import pytest

from jetlaw.grammar import parse_expr
from jetlaw.soln import make_pde


@pytest.fixture(scope="session")
def kdv():
    return make_pde((1, 0), parse_expr("-u*u_x - u_xxx"))


@pytest.fixture(scope="session")
def heat():
    return make_pde((1, 0), parse_expr("u_xx"))


@pytest.fixture(scope="session")
def burgers():
    return make_pde((1, 0), parse_expr("u_xx - u*u_x"))


@pytest.fixture(scope="session")
def wave():
    return make_pde((2, 0), parse_expr("u_xx - u^3"))
