"""Select the word rewriting kernel: compiled when available, else pure Python.

Set ``CLTTF_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _rewrite_py as python_kernel

compiled_kernel = None
if not os.environ.get("CLTTF_PURE_PYTHON"):
    try:
        from . import _rewrite as compiled_kernel  # type: ignore[no-redef]
    except ImportError:
        compiled_kernel = None

active = compiled_kernel if compiled_kernel is not None else python_kernel
NAME = "compiled" if compiled_kernel is not None else "python"
