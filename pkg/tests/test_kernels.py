"""The compiled oracle kernels agree with the pure-Python ones."""
import itertools
import random

import pytest

from opengames import kernels
from opengames.kernels import _pykernels as py

ck = pytest.importorskip("opengames.kernels._ckernels", reason="compiled kernels not built")


def naive_nash(pay, shape, tol):
    n = len(pay) // len(shape)
    cells = list(itertools.product(*[range(d) for d in shape]))
    index = {c: i for i, c in enumerate(cells)}
    out = []
    for c in cells:
        ok = True
        for p, d in enumerate(shape):
            mine = pay[p * n + index[c]]
            for a in range(d):
                alt = c[:p] + (a,) + c[p + 1 :]
                if pay[p * n + index[alt]] > mine + tol:
                    ok = False
        out.append(int(ok))
    return out


@pytest.mark.parametrize("seed", range(30))
def test_nash_mask_backends_agree(seed):
    rng = random.Random(seed)
    shape = [rng.randint(1, 4) for _ in range(rng.randint(1, 3))]
    n = 1
    for d in shape:
        n *= d
    pay = [float(rng.randint(-2, 2)) for _ in range(n * len(shape))]
    want = naive_nash(pay, shape, 1e-9)
    assert list(py.nash_mask(pay, shape, 1e-9)) == want
    assert list(ck.nash_mask(pay, shape, 1e-9)) == want


@pytest.mark.parametrize("seed", range(30))
def test_spe_pairs_backends_agree(seed):
    rng = random.Random(100 + seed)
    n1, n2 = rng.randint(1, 4), rng.randint(1, 3)
    u1 = [float(rng.randint(0, 3)) for _ in range(n1 * n2)]
    u2 = [float(rng.randint(0, 3)) for _ in range(n1 * n2)]
    a = py.spe_pairs(u1, u2, n1, n2, 1e-9)
    b = ck.spe_pairs(u1, u2, n1, n2, 1e-9)
    assert [(x, tuple(t)) for x, t in a] == [(x, tuple(t)) for x, t in b]


def test_tolerance_respected():
    pay = [1.0, 1.0 + 1e-12]
    assert list(py.nash_mask(pay, [2], 1e-9)) == [1, 1]
    assert list(ck.nash_mask(pay, [2], 1e-9)) == [1, 1]
    assert list(ck.nash_mask(pay, [2], 0.0)) == [0, 1]


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")
    assert kernels.BACKEND == "cython"
