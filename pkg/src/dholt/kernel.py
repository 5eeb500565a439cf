"""Select the term-kernel backend.

The compiled extension is used when it has been built; setting
``DHOLT_PURE_PYTHON=1`` forces the pure-Python implementation.
"""
import os

if os.environ.get("DHOLT_PURE_PYTHON"):
    from dholt._kernel_py import *  # noqa: F401,F403
    from dholt import _kernel_py as backend
else:
    try:
        from dholt._kernel_c import *  # noqa: F401,F403
        from dholt import _kernel_c as backend
    except ImportError:
        from dholt._kernel_py import *  # noqa: F401,F403
        from dholt import _kernel_py as backend

BACKEND = backend.BACKEND
