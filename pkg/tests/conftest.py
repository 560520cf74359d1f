import numpy as np
import pytest

from charsums.ffield import HomogPoly, build_field, extension_field
from charsums.hodge import DegreeProfile, ExponentVector


def lines_111():
    """x_0, x_1, x_0+x_1 in P^1."""
    return [HomogPoly.from_terms(1, [((1, 0), 1)]),
            HomogPoly.from_terms(1, [((0, 1), 1)]),
            HomogPoly.from_terms(1, [((1, 0), 1), ((0, 1), 1)])]


def jacobi_instance_q7():
    prof = DegreeProfile(1, (1, 1, 1))
    return lines_111(), ExponentVector(7, (1, 2, 3), prof), prof


def line_conic_transversal():
    """x_1 and x_0^2 + x_1^2 - x_2^2 over F_7 (transversal)."""
    line = HomogPoly.from_terms(2, [((0, 1, 0), 1)])
    conic = HomogPoly.from_terms(2, [((2, 0, 0), 1), ((0, 2, 0), 1), ((0, 0, 2), 6)])
    return [line, conic]


def line_conic_tangent():
    """x_0 and x_1^2 - x_0 x_2 over F_7 (tangent at (0:0:1))."""
    line = HomogPoly.from_terms(2, [((1, 0, 0), 1)])
    conic = HomogPoly.from_terms(2, [((0, 2, 0), 1), ((1, 0, 1), 6)])
    return [line, conic]


def line_cubic_transversal():
    """x_2 and the Fermat cubic over F_7 (transversal)."""
    line = HomogPoly.from_terms(2, [((0, 0, 1), 1)])
    cubic = HomogPoly.from_terms(2, [((3, 0, 0), 1), ((0, 3, 0), 1), ((0, 0, 3), 1)])
    return [line, cubic]


@pytest.fixture(scope="session")
def warm_kernels():
    """Compile the numba kernel once so timed tests measure computation,
    not JIT."""
    from charsums.ffield import char_sum
    fs, e, _ = jacobi_instance_q7()
    char_sum(fs, e, 1, backend="numba")
    char_sum(fs, e, 1, backend="numpy")
    return True


@pytest.fixture(scope="session")
def f7():
    return build_field(7, 1)


@pytest.fixture(scope="session")
def f9():
    return build_field(3, 2)
