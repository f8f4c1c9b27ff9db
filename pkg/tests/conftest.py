import contextlib

import pytest


@pytest.fixture
def criterion(capsys):
    """Wrap one acceptance check so it prints a visible pass/fail line."""

    @contextlib.contextmanager
    def check(number: int, summary: str):
        try:
            yield
        except pytest.skip.Exception:
            with capsys.disabled():
                print(f"\ncriterion {number:2d} SKIP: {summary}")
            raise
        except BaseException:
            with capsys.disabled():
                print(f"\ncriterion {number:2d} FAIL: {summary}")
            raise
        with capsys.disabled():
            print(f"\ncriterion {number:2d} PASS: {summary}")

    return check
