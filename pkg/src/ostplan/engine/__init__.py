"""Kernel engine selection.

Two interchangeable engines implement the seven array kernels the pipeline
runs on: ostplan.engine.pure (always available) and the compiled
ostplan.engine._kernels extension (built when Cython and a C compiler are
around).  The fastest available one is picked at import time; set the
OSTPLAN_ENGINE environment variable to "py" or "c" to force a choice, or call
use() at runtime.  Call kernels through this module (engine.canonical_peel
and friends) so a switch takes effect; direct from-imports pin one engine.
"""

from __future__ import annotations

import os

from . import pure as _pure

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

KERNEL_NAMES = (
    "canonical_peel",
    "realizer_colors",
    "realizer_check",
    "preorder_tree",
    "annotate_blocks",
    "solve_strips",
    "solve_bounds",
)

_active_name = ""


def compiled_available() -> bool:
    """Report whether the compiled kernel extension was importable."""
    return _compiled is not None


def use(name: str = "auto") -> str:
    """Select the kernel engine: "auto", "py", or "c".

    "auto" prefers the compiled engine and falls back to pure Python.  "c"
    raises RuntimeError when the extension is not available.  Returns the
    name of the engine now active ("py" or "c").  Not thread safe; switch
    engines only between pipeline runs.
    """
    global _active_name
    if name not in ("auto", "py", "c"):
        raise ValueError(f"unknown engine {name!r}; expected auto, py, or c")
    if name == "c" and _compiled is None:
        raise RuntimeError("compiled kernels are not available in this install")
    if name == "py":
        mod = _pure
    elif name == "c":
        mod = _compiled
    else:
        mod = _compiled if _compiled is not None else _pure
    for fn in KERNEL_NAMES:
        globals()[fn] = getattr(mod, fn)
    _active_name = "py" if mod is _pure else "c"
    return _active_name


def active_engine() -> str:
    """Return the name of the engine currently in use ("py" or "c")."""
    return _active_name


use(os.environ.get("OSTPLAN_ENGINE", "auto"))
