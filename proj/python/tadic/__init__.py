"""Ergodicity and measure-preservation checks for 1-Lipschitz maps of Z_2."""

from ._core import *  # noqa: F401,F403
from ._core import Error, ParseError  # noqa: F401

__version__ = "0.1.0"
