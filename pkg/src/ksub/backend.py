"""Kernel backend selection.

The hot loops (oracle evaluation, greedy completions, exhaustive search and
exhaustive property checks) exist twice: a compiled Cython module
(ksub._speedups) and a pure-Python mirror (ksub._pykernels). The compiled
one is picked when importable; set KSUB_BACKEND=pure or KSUB_BACKEND=compiled
to force a choice, or call set_backend() at runtime.
"""

from __future__ import annotations

import os

from ksub import _pykernels

try:
    from ksub import _speedups
except ImportError:  # pragma: no cover - depends on the build
    _speedups = None

_BACKENDS = {"pure": _pykernels}
if _speedups is not None:
    _BACKENDS["compiled"] = _speedups


def available() -> list[str]:
    return sorted(_BACKENDS)


def _initial():
    forced = os.environ.get("KSUB_BACKEND")
    if forced is not None:
        if forced not in _BACKENDS:
            raise RuntimeError(
                f"KSUB_BACKEND={forced!r} but available backends are {available()}"
            )
        return _BACKENDS[forced]
    return _BACKENDS.get("compiled", _pykernels)


_active = _initial()


def active():
    """The kernel module currently in use."""
    return _active


def name() -> str:
    return _active.NAME


def set_backend(which: str) -> None:
    global _active
    if which not in _BACKENDS:
        raise ValueError(f"unknown backend {which!r}; available: {available()}")
    _active = _BACKENDS[which]


def get(which: str):
    """Fetch a backend module by name without activating it."""
    if which not in _BACKENDS:
        raise ValueError(f"unknown backend {which!r}; available: {available()}")
    return _BACKENDS[which]
