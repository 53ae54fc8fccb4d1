import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from segalsets import kernels

BACKENDS = kernels.backends()
pairs = pytest.mark.skipif("compiled" not in BACKENDS, reason="compiled extension not built")

int_arrays = st.lists(st.integers(0, 6), max_size=40).map(lambda xs: np.array(xs, dtype=np.int64))


def csr(draw_sizes, n_items):
    sizes = np.array(draw_sizes, dtype=np.int64)
    offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)
    items = np.arange(offsets[-1], dtype=np.int64) % max(n_items, 1)
    return offsets, items


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_first_repeat_examples(name):
    impl = BACKENDS[name]
    assert impl.first_repeat(np.array([3, 1, 4, 1, 3], dtype=np.int64)) == (1, 3)
    assert impl.first_repeat(np.array([0, 1, 2], dtype=np.int64)) == (-1, -1)
    assert impl.first_repeat(np.array([], dtype=np.int64)) == (-1, -1)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_count_triples_example(name):
    a = np.array([0, 0, 1], dtype=np.int64)
    b = np.array([1, 1, 0], dtype=np.int64)
    c = np.array([2, 2, 2], dtype=np.int64)
    assert dict(BACKENDS[name].count_triples(a, b, c, 2, 2, 3)) == {(0, 1, 2): 2, (1, 0, 2): 1}


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_fiber_join_example(name):
    rows = np.array([[5], [6]], dtype=np.int64)
    keys = np.array([1, 0], dtype=np.int64)
    offsets = np.array([0, 1, 3], dtype=np.int64)
    items = np.array([7, 8, 9], dtype=np.int64)
    out = BACKENDS[name].fiber_join(rows, keys, offsets, items)
    assert out.tolist() == [[5, 8], [5, 9], [6, 7]]


@pairs
@given(int_arrays)
def test_first_repeat_parity(keys):
    assert BACKENDS["compiled"].first_repeat(keys) == BACKENDS["python"].first_repeat(keys)


@pairs
@given(int_arrays, st.data())
def test_count_triples_parity(a, data):
    b = data.draw(st.lists(st.integers(0, 6), min_size=len(a), max_size=len(a)))
    c = data.draw(st.lists(st.integers(0, 6), min_size=len(a), max_size=len(a)))
    b, c = np.array(b, dtype=np.int64), np.array(c, dtype=np.int64)
    fast = BACKENDS["compiled"].count_triples(a, b, c, 7, 7, 7)
    slow = BACKENDS["python"].count_triples(a, b, c, 7, 7, 7)
    assert dict(fast) == dict(slow)


@pairs
@given(st.lists(st.integers(0, 3), min_size=1, max_size=5), st.integers(0, 3), st.data())
def test_fiber_join_parity(sizes, width, data):
    offsets, items = csr(sizes, 9)
    R = data.draw(st.integers(0, 8))
    rows = np.array(data.draw(st.lists(st.lists(st.integers(0, 9), min_size=width, max_size=width), min_size=R, max_size=R)), dtype=np.int64).reshape(R, width)
    keys = np.array(data.draw(st.lists(st.integers(0, len(sizes) - 1), min_size=R, max_size=R)), dtype=np.int64)
    fast = BACKENDS["compiled"].fiber_join(rows, keys, offsets, items)
    slow = BACKENDS["python"].fiber_join(rows, keys, offsets, items)
    assert fast.shape == slow.shape and (fast == slow).all()


def test_env_var_forces_python_backend():
    code = "from segalsets import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, SEGALSETS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_pure_python_backend_gives_same_verdicts():
    code = (
        "from segalsets import graphs, segal, hall;"
        "X = graphs.build_XG(graphs.path_graph(), 4);"
        "print(segal.segal2_check(X).verdict, segal.segal1_check(X).witness.data['simplices'],"
        " len(hall.hall_algebra(X).constants))"
    )
    results = set()
    for flag in ("1", ""):
        env = dict(os.environ, SEGALSETS_PURE_PYTHON=flag)
        results.add(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout)
    assert len(results) == 1
