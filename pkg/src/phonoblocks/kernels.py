"""Kernel selection: compiled extension if available, pure Python otherwise.

Set PHONOBLOCKS_PURE_PYTHON=1 to force the fallback (used by the
benchmark and the parity tests).
"""

from __future__ import annotations

import os

if os.environ.get("PHONOBLOCKS_PURE_PYTHON"):
    from phonoblocks import _pykernels as _impl

    COMPILED = False
else:
    try:
        from phonoblocks import _kernels as _impl  # type: ignore[no-redef]

        COMPILED = True
    except ImportError:
        from phonoblocks import _pykernels as _impl

        COMPILED = False

enumerate_pairs = _impl.enumerate_pairs
em_iteration = _impl.em_iteration
viterbi_batch = _impl.viterbi_batch

IMPLEMENTATION = "cython" if COMPILED else "python"
