"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``SAWKIT_KERNEL=python`` or ``SAWKIT_KERNEL=native`` to force a choice;
the default (``auto``) prefers the compiled extension.
"""

from __future__ import annotations

import os

from . import _py

STATUS_PROVED = _py.STATUS_PROVED
STATUS_BUDGET_EXHAUSTED = _py.STATUS_BUDGET_EXHAUSTED


def load_kernel(name: str):
    """Return the kernel module for an explicit name ('python' or 'native')."""
    if name == "python":
        return _py
    if name == "native":
        from . import _native

        return _native
    raise ValueError(f"unknown kernel {name!r}")


def _select():
    requested = os.environ.get("SAWKIT_KERNEL", "auto").strip().lower() or "auto"
    if requested in ("python", "py"):
        return _py, "python"
    if requested == "native":
        return load_kernel("native"), "native"
    if requested != "auto":
        raise ImportError(f"SAWKIT_KERNEL={requested!r} (expected auto, native or python)")
    try:
        from . import _native
    except ImportError:
        return _py, "python"
    return _native, "native"


_impl, kernel_name = _select()

zeta_subset_inplace = _impl.zeta_subset_inplace
zeta_superset_inplace = _impl.zeta_superset_inplace
mobius_subset_inplace = _impl.mobius_subset_inplace
run_search = _impl.run_search
