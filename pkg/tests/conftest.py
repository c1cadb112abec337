import os

import pytest


@pytest.fixture(scope="session", autouse=True)
def relation_cache(tmp_path_factory):
    """One on-disk cache of relation systems for the whole run (subprocess CLI tests reuse it)."""
    d = tmp_path_factory.mktemp("dsh-cache")
    old = os.environ.get("TVF_CACHE_DIR")
    os.environ["TVF_CACHE_DIR"] = str(d)
    yield d
    if old is None:
        os.environ.pop("TVF_CACHE_DIR", None)
    else:
        os.environ["TVF_CACHE_DIR"] = old


_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def record_criterion():
    """Record one PASS/FAIL line per acceptance criterion; all of them are echoed at the end of the run."""
    def record(n: int, ok: bool, text: str) -> bool:
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {text}"
        _ACCEPTANCE[n] = line
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[n])
