"""Kernel backend selection.

Imports the compiled Cython kernels when available, falling back to the
pure-numpy implementation. Set SCBAND_PURE_PYTHON=1 to force the fallback.
"""

import os

from . import _pykern

if os.environ.get("SCBAND_PURE_PYTHON"):
    _impl = _pykern
    BACKEND = "python"
else:
    try:
        from . import _ckern as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _pykern
        BACKEND = "python"

design_matrix = _impl.design_matrix
normal_eq = _impl.normal_eq
predict = _impl.predict
cov_raw = _impl.cov_raw
