"""The compiled kernel must be indistinguishable from the pure-Python one:
same optima, same node counts, same transform outputs."""

import numpy as np
import pytest

from sawkit._kernels import load_kernel
from sawkit.search import Mode, SearchProblem, search_max

py_kernel = load_kernel("python")
try:
    native_kernel = load_kernel("native")
except ImportError:
    native_kernel = None

needs_native = pytest.mark.skipif(
    native_kernel is None, reason="compiled kernel not built"
)


@needs_native
@pytest.mark.parametrize("n", range(0, 13))
def test_transform_parity(n):
    rng = np.random.default_rng(n)
    v = rng.integers(-1000, 1000, size=1 << n).astype(np.int64)
    for name in ("zeta_subset_inplace", "zeta_superset_inplace", "mobius_subset_inplace"):
        a = v.copy()
        b = v.copy()
        getattr(py_kernel, name)(a)
        getattr(native_kernel, name)(b)
        assert np.array_equal(a, b)


def outcome_key(outcome):
    return (
        outcome.optimum,
        outcome.nodes_explored,
        outcome.status,
        [f.mask_set() for f in outcome.optima],
        outcome.orbit_sizes,
    )


@needs_native
@pytest.mark.parametrize("n", range(1, 5))
def test_search_parity_small_grid(n):
    for t in range(0, n + 1):
        for intersecting in (False, True):
            for symmetry in (False, True):
                for all_optima in (False, True):
                    for mode in (Mode.EXHAUSTIVE, Mode.BRANCH_AND_BOUND):
                        problem = SearchProblem(
                            n=n,
                            t=t,
                            require_intersecting=intersecting,
                            symmetry=symmetry,
                            enumerate_all_optima=all_optima,
                            mode=mode,
                        )
                        assert outcome_key(search_max(problem, _kernel=py_kernel)) == outcome_key(
                            search_max(problem, _kernel=native_kernel)
                        )


@needs_native
@pytest.mark.parametrize(
    "problem",
    [
        SearchProblem(n=5, t=1, symmetry=True, enumerate_all_optima=True),
        SearchProblem(n=5, t=1, require_intersecting=True, enumerate_all_optima=True),
        SearchProblem(n=5, t=2, enumerate_all_optima=True, budget=20_000),
        SearchProblem(n=6, t=1, require_intersecting=True),
        SearchProblem(n=6, t=1, layer_window=(2, 4), require_intersecting=True),
    ],
)
def test_search_parity_larger_cases(problem):
    assert outcome_key(search_max(problem, _kernel=py_kernel)) == outcome_key(
        search_max(problem, _kernel=native_kernel)
    )
