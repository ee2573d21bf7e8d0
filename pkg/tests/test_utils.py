"""
This file tests the solver configuration and the zero cache.
"""

import os
import threading

import pytest
from pydantic import ValidationError

from pleijel import SolverParams
from pleijel.utils import ZeroCache, default_workers, import_config, order_key


def test_zero_cache_extends():
    cache = ZeroCache()
    assert cache.get("a") == []
    cache.extend("a", [1.0, 2.0])
    cache.extend("a", [1.0])
    assert cache.get("a") == [1.0, 2.0]

    zeros = cache.get("a")
    zeros.append(3.0)
    assert cache.get("a") == [1.0, 2.0]

    cache.clear()
    assert len(cache) == 0


def test_zero_cache_evicts_least_recent():
    cache = ZeroCache(maxsize=2)
    cache.extend("a", [1.0])
    cache.extend("b", [2.0])
    cache.get("a")
    cache.extend("c", [3.0])
    assert len(cache) == 2
    assert cache.get("b") == []
    assert cache.get("a") == [1.0]


def test_zero_cache_threads():
    cache = ZeroCache()
    sequence = [float(i) for i in range(100)]

    def fill(n):
        cache.extend("key", sequence[:n])

    threads = [threading.Thread(target=fill, args=(n,)) for n in range(1, 101)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert cache.get("key") == sequence


def test_order_key():
    assert order_key(0.5) == order_key(0.5 + 1e-15)
    assert order_key(1) == 1.0


def test_solver_params_env(monkeypatch):
    monkeypatch.setenv("PLEIJEL_NU_MAX", "50")
    monkeypatch.setenv("PLEIJEL_ZERO_CACHE", "false")
    params = SolverParams()
    assert params.nu_max == 50
    assert params.zero_cache is False
    assert SolverParams(nu_max=10).nu_max == 10


def test_worker_env_only_caps(monkeypatch):
    monkeypatch.setenv("PLEIJEL_MAX_WORKERS", "1")
    assert SolverParams().max_workers == 1

    monkeypatch.setenv("PLEIJEL_MAX_WORKERS", "100000")
    assert SolverParams().max_workers == default_workers()


def test_solver_params_validation():
    with pytest.raises(ValidationError):
        SolverParams(r_max=1.0)

    with pytest.raises(ValidationError):
        SolverParams(unknown=1)


def test_import_config(tmp_path, monkeypatch):
    config = tmp_path / ".pleijelrc.yml"
    config.write_text("PLEIJEL_MERGE_RTOL: 1.0e-6\n")
    monkeypatch.delenv("PLEIJEL_YAML_LOADED")
    monkeypatch.setenv("PLEIJEL_MERGE_RTOL", "1e-8")

    import_config(str(config))
    assert os.environ["PLEIJEL_YAML_LOADED"] == "1"
    assert SolverParams().merge_rtol == 1e-6

    # A loaded config is never read twice
    config.write_text("PLEIJEL_MERGE_RTOL: 1.0e-4\n")
    import_config(str(config))
    assert SolverParams().merge_rtol == 1e-6
