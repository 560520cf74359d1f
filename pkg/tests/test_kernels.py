import os
import subprocess
import sys

import numpy as np
import pytest

from charsums.ffield import char_sum, char_sum_reference
from charsums.hodge import DegreeProfile, ExponentVector
from charsums.kernels import default_backend, get_histogram_fn

from conftest import (jacobi_instance_q7, line_conic_transversal,
                      line_cubic_transversal, lines_111)


def test_backends_agree_on_several_instances(warm_kernels):
    cases = []
    fs, e, _ = jacobi_instance_q7()
    cases.append((fs, e, 2))
    prof = DegreeProfile(2, (1, 2))
    cases.append((line_conic_transversal(), ExponentVector(7, (4, 4), prof), 2))
    prof9 = DegreeProfile(1, (1, 1, 1))
    cases.append((lines_111(), ExponentVector(9, (1, 2, 5), prof9), 2))
    prof13 = DegreeProfile(2, (1, 3))
    cases.append((line_cubic_transversal(), ExponentVector(7, (3, 1), prof13), 2))
    for fs_, e_, m in cases:
        a = char_sum(fs_, e_, m, backend="numba").exact
        b = char_sum(fs_, e_, m, backend="numpy").exact
        assert a == b
        if e_.q ** (m * 2) < 10 ** 5:
            assert a == char_sum_reference(fs_, e_, m)


def test_affine_mode_backends_agree(warm_kernels):
    fs, e, _ = jacobi_instance_q7()
    a = char_sum(fs, e, 2, affine=True, backend="numba").exact
    b = char_sum(fs, e, 2, affine=True, backend="numpy").exact
    assert a == b


def test_default_backend_is_numba():
    assert default_backend() == "numba"
    assert get_histogram_fn("numba").__module__.endswith("histo_numba")
    assert get_histogram_fn("numpy").__module__.endswith("histo_numpy")


def test_env_flag_selects_backend():
    code = (
        "import os\n"
        "from charsums.kernels import default_backend, get_histogram_fn\n"
        "assert default_backend() == 'numpy'\n"
        "assert get_histogram_fn().__module__.endswith('histo_numpy')\n"
        "from charsums.ffield import char_sum\n"
        "from charsums.hodge import DegreeProfile, ExponentVector\n"
        "from charsums.ffield import HomogPoly\n"
        "fs = [HomogPoly.from_terms(1, [((1, 0), 1)]),\n"
        "      HomogPoly.from_terms(1, [((0, 1), 1)]),\n"
        "      HomogPoly.from_terms(1, [((1, 0), 1), ((0, 1), 1)])]\n"
        "e = ExponentVector(7, (1, 2, 3), DegreeProfile(1, (1, 1, 1)))\n"
        "v = char_sum(fs, e, 1)\n"
        "assert [int(c) for c in v.exact.int_coeffs()] == [1, 2]\n"
    )
    env = dict(os.environ, CHARSUMS_BACKEND="numpy")
    proc = subprocess.run([sys.executable, "-c", code], env=env,
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr


def test_invalid_backend_rejected():
    with pytest.raises(ValueError):
        get_histogram_fn("cuda")


def test_chunk_boundaries_do_not_change_results(warm_kernels):
    from charsums.ffield import exponent_histogram, extension_field, build_field
    fs, e, _ = jacobi_instance_q7()
    ext = extension_field(build_field(7, 1), 2)
    w = [(c * ext.tau_inv) % 6 for c in e.numerators]
    h1 = exponent_histogram(ext, 1, fs, w, [0, 0, 0], chunk=7)
    h2 = exponent_histogram(ext, 1, fs, w, [0, 0, 0], chunk=1 << 20)
    assert np.array_equal(h1, h2)
