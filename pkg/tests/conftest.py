"""
Shared fixtures: the small fields and contexts used across the suite.
"""

import time
from contextlib import contextmanager

import pytest

from core.complex import ComplexCtx
from core.config import DEFAULT_CONFIG_FILE, load_config
from core.gf import all_elements, make_field, make_omega, prime_field


def context(p, modulus, omega):
    spec = make_field(p, modulus)
    return ComplexCtx(spec, make_omega(spec, omega))


@pytest.fixture
def ctx4():
    """F_4 = F_2[g]/(g^2+g+1), omega = g (order 3)"""
    return context(2, [1, 1, 1], "g")


@pytest.fixture
def ctx8():
    """F_8 = F_2[g]/(g^3+g^2+1), omega = g (order 7)"""
    return context(2, [1, 0, 1, 1], "g")


@pytest.fixture
def ctx9():
    """F_9 = F_3[g]/(g^2+1), omega = g (order 4)"""
    return context(3, [1, 0, 1], "g")


@pytest.fixture
def ctx9b():
    """F_9 = F_3[g]/(g^2+g-1), omega = g (primitive)"""
    return context(3, [2, 1, 1], "g")


@pytest.fixture
def ctx3():
    """F_3 with omega = -1"""
    spec = prime_field(3)
    return ComplexCtx(spec, make_omega(spec, -1))


CATALOG = load_config(str(DEFAULT_CONFIG_FILE))["catalog"]


def catalog_field(key):
    entry = CATALOG[key]
    return make_field(entry["p"], entry["modulus"])


def catalog_params(slow_from=None):
    """Catalog keys as pytest params, the ones with q >= slow_from marked slow"""
    out = []
    for key, entry in CATALOG.items():
        q = entry["p"] ** (len(entry["modulus"]) - 1)
        marks = [pytest.mark.slow] if slow_from is not None and q >= slow_from else []
        out.append(pytest.param(key, marks=marks, id=f"q{key}"))
    return out


def valid_omegas(spec):
    return [make_omega(spec, w) for w in all_elements(spec) if w.code not in (0, 1)]


@contextmanager
def within(seconds):
    """Fail when the block runs for seconds or longer (wall clock)"""
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f}s, budget {seconds}s"
