import pytest

from src.bootstrap.session import new_session
from src.hol.terms import Var
from src.hol.types import ALPHA, BOOL, mk_fun_type
from src.kernel.context import KernelContext, KernelMode

MODES = [KernelMode.MINIMAL.value, KernelMode.EXTENDED.value]

p = Var("p", BOOL)
q = Var("q", BOOL)
r = Var("r", BOOL)
x = Var("x", ALPHA)
y = Var("y", ALPHA)
z = Var("z", ALPHA)
c = Var("c", ALPHA)
f = Var("f", mk_fun_type(ALPHA, ALPHA))
g = Var("g", mk_fun_type(ALPHA, ALPHA))
P = Var("P", mk_fun_type(ALPHA, BOOL))


@pytest.fixture(params=MODES)
def mode(request):
    return request.param


@pytest.fixture
def session(mode):
    return new_session(mode)


@pytest.fixture
def minimal_session():
    return new_session(KernelMode.MINIMAL)


@pytest.fixture
def extended_session():
    return new_session(KernelMode.EXTENDED)


@pytest.fixture
def minimal_ctx():
    return KernelContext(KernelMode.MINIMAL)


@pytest.fixture
def extended_ctx():
    return KernelContext(KernelMode.EXTENDED)
