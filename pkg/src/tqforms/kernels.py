"""Hot loops, compiled when the extension is built and pure Python otherwise.

Set TQFORMS_PURE=1 to force the fallback.
"""
import os

from . import _kernels_py as pure

compiled = None
if not os.environ.get("TQFORMS_PURE"):
    try:
        from . import _kernels as compiled  # type: ignore[no-redef]
    except ImportError:  # extension not built
        compiled = None

_impl = compiled if compiled is not None else pure
BACKEND = "cython" if compiled is not None else "python"

box_min = _impl.box_min
spectrum_scan = _impl.spectrum_scan
iso_flags = _impl.iso_flags
iso_box = _impl.iso_box
legendre_solvable = pure.legendre_solvable
