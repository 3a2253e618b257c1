import pytest


@pytest.fixture(autouse=True)
def _isolate_thread_env(monkeypatch):
    # sweeps must default to single-threaded regardless of the caller's shell
    monkeypatch.delenv("TCN_THREADS", raising=False)
