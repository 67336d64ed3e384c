"""Counting kernels with import-time backend selection.

Two interchangeable implementations of the hot counting loop exist: a
compiled Cython extension (``_speedups``) and a pure-Python fallback
(``pure``).  ``get_kernel()`` picks one; the ``UNIQJIF_KERNEL`` environment
variable ("c", "python", or "auto") overrides the default, which is the
compiled kernel whenever the extension imported successfully.
"""

from __future__ import annotations

import os

from uniqjif.kernels import pure

try:
    from uniqjif.kernels import _speedups
except ImportError:  # built without a compiler / Cython
    _speedups = None

_BACKENDS = {"python": pure}
if _speedups is not None:
    _BACKENDS["c"] = _speedups


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def get_kernel(name: str | None = None):
    """Return the kernel module for ``name`` ("c", "python", or "auto").

    ``None``/"auto" consults UNIQJIF_KERNEL, then prefers the compiled
    backend.  Asking for "c" when the extension is missing is an error.
    """
    if name is None or name == "auto":
        name = os.environ.get("UNIQJIF_KERNEL", "auto").strip().lower() or "auto"
    if name == "auto":
        name = "c" if "c" in _BACKENDS else "python"
    try:
        return _BACKENDS[name]
    except KeyError:
        if name == "c":
            raise RuntimeError("compiled kernel requested but the extension is not built") from None
        raise ValueError(f"unknown kernel backend {name!r}; expected one of: auto, c, python") from None


def active_backend(name: str | None = None) -> str:
    """Name of the backend ``get_kernel(name)`` would return."""
    kernel = get_kernel(name)
    return "c" if kernel is _speedups else "python"


def pair_group_counts(group_ids, item_ids, n_groups, n_items):
    """Dispatch to the selected backend (see ``get_kernel``)."""
    return get_kernel().pair_group_counts(group_ids, item_ids, n_groups, n_items)
