"""Backend selection for the hot loops.

The compiled extension is used when it imports; set ``LOCALCERT_PURE_PYTHON=1``
to force the pure-Python implementation.
"""

import os

if os.environ.get("LOCALCERT_PURE_PYTHON"):
    from localcert._kernels_py import *  # noqa: F401,F403
    from localcert._kernels_py import OrientationKernel, TernaryKernel

    BACKEND = "python"
else:
    try:
        from localcert._kernels import *  # noqa: F401,F403
        from localcert._kernels import OrientationKernel, TernaryKernel

        BACKEND = "cython"
    except ImportError:
        from localcert._kernels_py import *  # noqa: F401,F403
        from localcert._kernels_py import OrientationKernel, TernaryKernel

        BACKEND = "python"

__all__ = ["BACKEND", "OrientationKernel", "TernaryKernel"]
