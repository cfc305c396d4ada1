"""Selects the compiled polynomial kernels when available.

Set ``WEIGHTEDPROJ_PURE=1`` to force the pure-Python path.
"""

import os

from weightedproj import _kernels_py

IMPLEMENTATION = "python"
mul_terms = _kernels_py.mul_terms
add_terms = _kernels_py.add_terms

if os.environ.get("WEIGHTEDPROJ_PURE") != "1":
    try:
        from weightedproj import _speedups
    except ImportError:
        pass
    else:
        mul_terms = _speedups.mul_terms
        add_terms = _speedups.add_terms
        IMPLEMENTATION = "cython"
