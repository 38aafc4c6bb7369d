import time

import pytest


@pytest.fixture(scope="session")
def half_family():
    """Certified products for the ten shipped sup-1/2 intervals plus their
    exact reflections; certified once for the whole suite.  Returns
    (list of certified products, elapsed seconds)."""
    from monictd import fixtures
    from monictd.cheb import certify_on_maximal_interval, reflect_certified
    t0 = time.perf_counter()
    base = [certify_on_maximal_interval(s.product, s.obstruction, s.seed)
            for s in fixtures.halfband_products()]
    family = base + [reflect_certified(cp) for cp in reversed(base)]
    return family, time.perf_counter() - t0


@pytest.fixture(scope="session")
def half_cover(half_family):
    from monictd.bounds import cover_from_products
    family, _elapsed = half_family
    return cover_from_products(family)


@pytest.fixture(scope="session")
def obstruction_cover():
    from monictd import fixtures
    from monictd.bounds import cover_from_records
    return cover_from_records(fixtures.halfband_cover_records())
