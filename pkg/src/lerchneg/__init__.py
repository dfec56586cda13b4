"""Lerch Phi and polylogarithms at negative integer order, and what follows.

Closed finite sums for Phi(z, -m, u) and Li_{-m}(z), the Hurwitz zeta
function at integer k >= 2 as an elementary part plus one integral over
[0, 1], and arbitrary derivatives of cot, csc, tan and sec.
"""
from .exactmath import *  # noqa: F401,F403
from .hurwitz import *  # noqa: F401,F403
from .neglerch import *  # noqa: F401,F403
from .numcore import *  # noqa: F401,F403
from .quadrature import *  # noqa: F401,F403
from .trigderiv import *  # noqa: F401,F403
from . import exactmath, hurwitz, neglerch, numcore, quadrature, trigderiv

__version__ = "0.1.0"
