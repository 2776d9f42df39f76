"""Reduction-kernel backend selection.

The compiled backend (`fano_lines._kernel._speedups`, built from Cython)
is used when it imported successfully, unless the environment variable
``FANO_LINES_KERNEL`` forces a choice:

* ``FANO_LINES_KERNEL=pure`` -- always use the pure-Python kernel,
* ``FANO_LINES_KERNEL=compiled`` -- require the compiled kernel and fail
  loudly when it is unavailable.

Both backends implement the same ``normal_form_raw`` contract and produce
bit-identical results.  The compiled kernel only handles packed keys that
fit in a C ``long long``; ``normal_form_for`` falls back to the pure
kernel for wider keys.
"""

from __future__ import annotations

import os

from . import pure

try:
    from . import _speedups  # type: ignore[attr-defined]
except ImportError:
    _speedups = None

_forced = os.environ.get("FANO_LINES_KERNEL", "").strip().lower()
if _forced == "pure":
    _active = pure
elif _forced == "compiled":
    if _speedups is None:
        raise ImportError(
            "FANO_LINES_KERNEL=compiled but the compiled kernel is not importable"
        )
    _active = _speedups
elif _forced:
    raise ValueError(
        f"FANO_LINES_KERNEL must be 'pure' or 'compiled', got {_forced!r}"
    )
else:
    _active = _speedups if _speedups is not None else pure

BACKEND: str = _active.BACKEND


def normal_form_for(nfields: int, bits: int):
    """Return the fastest normal_form_raw able to handle this key width."""
    if _active is not pure and nfields * bits > 62:
        return pure.normal_form_raw
    return _active.normal_form_raw


normal_form_raw = _active.normal_form_raw
divides = pure.divides
raw_fields = pure.raw_fields
