"""Quadrature laboratory for multivalued growth functionals.

Thin re-export of the compiled extension; see the C++ headers for the
authoritative API documentation.
"""

try:  # installed wheel: the extension lives inside the package
    from qvlab._qvlab import *  # noqa: F401,F403
    from qvlab import _qvlab as _core
except ImportError:  # in-tree build: the extension sits on PYTHONPATH
    from _qvlab import *  # type: ignore # noqa: F401,F403
    import _qvlab as _core

__version__ = _core.__version__
