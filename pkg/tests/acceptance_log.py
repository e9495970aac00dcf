"""Collects one PASS/FAIL line per acceptance criterion."""

import time
from contextlib import contextmanager

LINES: list[str] = []


@contextmanager
def criterion(name: str, budget: float = float("inf")):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        LINES.append(f"FAIL  {name}  ({time.perf_counter() - start:.2f} s)")
        raise
    took = time.perf_counter() - start
    ok = took < budget
    limit = f"budget {budget:g} s" if budget != float("inf") else "no time budget"
    LINES.append(f"{'PASS' if ok else 'FAIL'}  {name}  ({took:.2f} s, {limit})")
    assert ok, f"{name} took {took:.2f} s, budget {budget} s"
