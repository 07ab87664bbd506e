"""Kernel backend selection.

Imports the compiled Cython kernels when the extension was built, falling
back to the pure-numpy reference otherwise.  Set ``MODEGRAPH_PURE=1`` to
force the pure backend (used by the parity tests and the benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("MODEGRAPH_PURE", "") not in ("", "0"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
HEAD_TANH = _impl.HEAD_TANH
HEAD_SIGMOID = _impl.HEAD_SIGMOID
lin_forward = _impl.lin_forward
regression_step = _impl.regression_step
probability_step = _impl.probability_step
dep_update = _impl.dep_update
rollout_path = _impl.rollout_path
