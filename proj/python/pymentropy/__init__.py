# Apache License, Version 2.0, refer to LICENSE.txt
"""Bayesian entropy estimation for undersampled discrete data."""

try:
    from ._pymentropy import *  # noqa: F401,F403
    from ._pymentropy import __doc__  # noqa: F401
except ImportError:  # build-tree layout: the extension sits on sys.path
    from _pymentropy import *  # noqa: F401,F403
    from _pymentropy import __doc__  # noqa: F401

__version__ = "0.1.0"
