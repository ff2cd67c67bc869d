import numpy as np
import pytest

from proframe.module import ModuleSpace

SIGNATURES = [(1,), (2,), (3,), (1, 2), (2, 3)]

# filled by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE_RESULTS = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=[(1,), (2,), (1, 2)], ids=lambda s: "sig" + "x".join(map(str, s)))
def space(request):
    return ModuleSpace(request.param, 2)


# Raw-array oracles.  They work directly on numpy blocks and never call the
# package's frame code, so they can check it independently.


def oracle_frame_operator(blocks_per_op, k):
    return sum(m[k] @ m[k].conj().T for m in blocks_per_op)


def oracle_min_eig(h):
    return float(np.linalg.eigvalsh(0.5 * (h + h.conj().T))[0])


def batch_energy(xs, s):
    """``X S X^H`` for a batch ``xs`` of shape (N, n, d)."""
    return np.einsum("bij,jk,blk->bil", xs, s, xs.conj())


def batch_gram(xs):
    return np.einsum("bij,blj->bil", xs, xs.conj())


def batch_spectral_norm(h):
    return np.linalg.norm(h, ord=2, axis=(1, 2))


def cgauss(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        title, ok = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key:2d}: {title}")
