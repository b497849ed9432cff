"""Kernel backend selection.

Imports the compiled elimination kernels when the extension was built,
otherwise the pure-Python fallback.  Set ``COXFORGE_PURE_PYTHON=1`` to force
the fallback (used by the benchmark and by tests that compare backends).
"""

from __future__ import annotations

import os

if os.environ.get("COXFORGE_PURE_PYTHON") == "1":
    from coxforge._kernels_py import BACKEND, det, hnf, smith
else:
    try:
        from coxforge._speedups import BACKEND, det, hnf, smith  # type: ignore[no-redef]
    except ImportError:
        from coxforge._kernels_py import BACKEND, det, hnf, smith  # type: ignore[no-redef]

__all__ = ["BACKEND", "det", "hnf", "smith"]
