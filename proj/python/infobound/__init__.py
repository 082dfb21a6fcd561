"""Information bounds for parametric channels (thin wrapper over _infobound)."""

try:
    from ._infobound import *  # noqa: F401,F403  (installed layout)
    from ._infobound import __doc__ as _doc
except ImportError:  # pragma: no cover - build-tree layout
    from _infobound import *  # noqa: F401,F403
    from _infobound import __doc__ as _doc

__doc__ = _doc
