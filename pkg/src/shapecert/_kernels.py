"""Kernel backend selection.

Prefers the compiled extension when it imported cleanly; set the environment
variable SHAPECERT_PURE_PYTHON=1 to force the pure fallback (useful for the
equivalence tests and the benchmark).
"""

import os

if os.environ.get("SHAPECERT_PURE_PYTHON"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels_c as _impl

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

run_embed_phase = _impl.run_embed_phase
bareiss_leading_minors = _impl.bareiss_leading_minors
lcp_pivot = _impl.lcp_pivot
