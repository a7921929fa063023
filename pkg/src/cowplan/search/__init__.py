"""Search kernels: a compiled extension when available, else pure Python.

Selection happens once at import. COWPLAN_KERNEL=py forces the fallback;
COWPLAN_KERNEL=c fails loudly if the extension is missing.
"""

from __future__ import annotations

import os

from cowplan.search import pykernel
from cowplan.search.encoding import EncodedTask, encode

FOUND = pykernel.FOUND
EXHAUSTED = pykernel.EXHAUSTED
BUDGET = pykernel.BUDGET
DEPTH = pykernel.DEPTH
GBFS = pykernel.GBFS
BFS = pykernel.BFS

_choice = os.environ.get("COWPLAN_KERNEL", "").lower()
_ckernel = None
if _choice != "py":
    try:
        from cowplan.search import _ckernel  # type: ignore[no-redef]
    except ImportError:
        _ckernel = None
        if _choice == "c":
            raise

KERNEL_NAME = "compiled" if _ckernel is not None else "python"


def solve_task(
    enc: EncodedTask, mode: int, budget: int, depth_limit: int = -1
) -> tuple[int, list[int] | None, int]:
    if _ckernel is not None:
        return _ckernel.solve(enc.packed(), mode, budget, depth_limit)
    return pykernel.solve(enc, mode, budget, depth_limit)


def solve_task_with(
    kernel: str, enc: EncodedTask, mode: int, budget: int, depth_limit: int = -1
) -> tuple[int, list[int] | None, int]:
    """Run a specific kernel by name ('python' or 'compiled'); benchmarking aid."""
    if kernel == "python":
        return pykernel.solve(enc, mode, budget, depth_limit)
    if kernel == "compiled":
        if _ckernel is None:
            raise RuntimeError("compiled kernel is not available")
        return _ckernel.solve(enc.packed(), mode, budget, depth_limit)
    raise ValueError(f"unknown kernel {kernel!r}")


def available_kernels() -> list[str]:
    return ["python"] + (["compiled"] if _ckernel is not None else [])


__all__ = [
    "BFS",
    "BUDGET",
    "DEPTH",
    "EXHAUSTED",
    "FOUND",
    "GBFS",
    "KERNEL_NAME",
    "EncodedTask",
    "available_kernels",
    "encode",
    "solve_task",
    "solve_task_with",
]
