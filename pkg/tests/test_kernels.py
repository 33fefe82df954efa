import os
import subprocess
import sys

from hypothesis import given, strategies as st

from replab import _kernels_py, kernels

weights = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
tables = st.dictionaries(weights, st.integers(-5, 5).filter(bool), max_size=12)


@given(tables, tables)
def test_selected_backend_matches_python(a, b):
    assert kernels.convolve(a, b) == _kernels_py.convolve(a, b)


def test_huge_coefficients_fall_back_exactly():
    a = {(0, 1): 2**70, (1, 0): -3}
    b = {(0, -1): 2**70 + 1, (2, 2): 5}
    assert kernels.convolve(a, b) == _kernels_py.convolve(a, b)


def test_compiled_module_when_built():
    try:
        from replab import _kernels  # noqa: F401
    except ImportError:
        assert kernels.BACKEND == "python"
    else:
        if os.environ.get("REPLAB_PURE") not in ("1", "true", "yes"):
            assert kernels.BACKEND == "compiled"


def test_pure_python_can_be_forced():
    env = dict(os.environ, REPLAB_PURE="1")
    res = subprocess.run(
        [sys.executable, "-c", "from replab import kernels; print(kernels.BACKEND)"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert res.stdout.strip() == "python"
