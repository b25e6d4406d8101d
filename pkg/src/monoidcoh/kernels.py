"""Select the compiled elimination kernels, or the pure-Python fallback.

Set ``MONOIDCOH_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
if not os.environ.get("MONOIDCOH_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None
    else:
        BACKEND = "compiled"
else:
    _compiled = None

_impl = _compiled if _compiled is not None else _kernels_py
rref_modp = _impl.rref_modp
rank_modp = _impl.rank_modp
