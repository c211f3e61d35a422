import pytest

from effosc import exact_levels


@pytest.fixture(scope="session")
def oracle():
    """Memoized diagonalization oracle shared across the whole run.

    Returns a getter (spec, n_max, rel_tol) -> OracleSpectrum; results that
    already cover the requested levels at the requested tolerance are
    reused, so the expensive high-level grids are diagonalized once.
    """
    cache = {}

    def get(spec, n_max, rel_tol=1e-10):
        key = (spec.k, spec.g, spec.lam, rel_tol)
        have = cache.get(key)
        if have is None or len(have.eigenvalues) < n_max + 1:
            have = exact_levels(spec, n_max, rel_tol=rel_tol)
            cache[key] = have
        return have

    return get
