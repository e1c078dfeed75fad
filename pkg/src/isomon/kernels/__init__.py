"""Hot kernels with a compiled core and a pure-Python fallback.

The compiled extension is used when it was built and imports cleanly; set
``ISOMON_PURE_PYTHON=1`` to force the fallback.  ``BACKEND`` names the
active implementation.
"""

import os

from . import _pykernels as python

cython = None
if os.environ.get("ISOMON_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _ckernels as cython
    except ImportError:
        cython = None

_active = cython if cython is not None else python

BACKEND = _active.BACKEND
compose_images = _active.compose_images
closure_images = _active.closure_images
expand = _active.expand
reduce_word = _active.reduce_word

__all__ = [
    "BACKEND",
    "closure_images",
    "compose_images",
    "expand",
    "python",
    "cython",
    "reduce_word",
]
