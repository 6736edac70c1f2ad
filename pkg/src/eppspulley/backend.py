"""Backend selection for the O(n^2) kernels.

The compiled extension is used when it imported cleanly; otherwise the
numpy fallback takes over.  Setting the environment variable
``EP_NO_EXTENSION`` (to anything non-empty) forces the fallback, which
is mainly useful for benchmarks and for testing backend agreement.
"""

import os

from . import _core_py

if os.environ.get("EP_NO_EXTENSION"):
    _impl = _core_py
    COMPILED = False
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        COMPILED = True
    except ImportError:
        _impl = _core_py
        COMPILED = False

pairwise_gauss_sum = _impl.pairwise_gauss_sum
kernel_gram = _impl.kernel_gram


def backend_name():
    return "compiled" if COMPILED else "numpy"
