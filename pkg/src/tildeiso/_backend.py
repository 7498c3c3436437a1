"""Select the cube engine: compiled extension if present, else pure.

Set TILDE_ISO_BACKEND=pure or TILDE_ISO_BACKEND=compiled to force one;
forcing the compiled engine on an installation without it is an error
rather than a silent fallback.
"""

from __future__ import annotations

import os

_forced = os.environ.get("TILDE_ISO_BACKEND")

if _forced == "pure":
    from . import _kernels_py as impl
elif _forced == "compiled":
    from . import _kernels as impl  # type: ignore[attr-defined]
elif _forced is None:
    try:
        from . import _kernels as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as impl
else:
    raise RuntimeError(
        f"TILDE_ISO_BACKEND={_forced!r} is not one of 'pure', 'compiled'"
    )

BACKEND = impl.BACKEND_NAME
