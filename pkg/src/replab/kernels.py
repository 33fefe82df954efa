"""Select the compiled kernels when they are importable, else the Python ones.

Set REPLAB_PURE=1 to force the Python fallback.
"""

import os

BACKEND = "python"

if os.environ.get("REPLAB_PURE", "") not in ("1", "true", "yes"):
    try:
        from ._kernels import convolve  # noqa: F401
        BACKEND = "compiled"
    except ImportError:
        from ._kernels_py import convolve  # noqa: F401
else:
    from ._kernels_py import convolve  # noqa: F401
