"""Backend selection for the RNG/bootstrap core.

The compiled extension is preferred when importable; the numpy fallback is
bit-identical, so results never depend on which backend is active. Set
RLEVAL_BACKEND=pure or RLEVAL_BACKEND=native to force one (native fails
loudly when the extension is missing).
"""

import os

from . import pure as _pure

_requested = os.environ.get("RLEVAL_BACKEND", "").strip().lower()
if _requested not in ("", "pure", "native"):
    raise ImportError(f"RLEVAL_BACKEND must be 'pure' or 'native', got {_requested!r}")

_impl = None
if _requested != "pure":
    try:
        from . import _fastcore as _impl  # type: ignore[no-redef]
    except ImportError:
        if _requested == "native":
            raise
        _impl = None
if _impl is None:
    _impl = _pure

BACKEND_NAME = _impl.BACKEND_NAME
philox_u32_blocks = _impl.philox_u32_blocks
bootstrap_means = _impl.bootstrap_means


def available_backends():
    names = ["pure"]
    try:
        from . import _fastcore  # noqa: F401

        names.insert(0, "native")
    except ImportError:
        pass
    return names


def get_backend(name):
    """Return the named backend module (for parity tests and benchmarks)."""
    if name == "pure":
        return _pure
    if name == "native":
        from . import _fastcore

        return _fastcore
    raise ValueError(f"unknown backend: {name!r}")
