"""Canceling-operator laboratory: operator classification, certificate
construction and Lorentz-scale inequality verification on sampled fields."""

from cancelab._core import *  # noqa: F401,F403
from cancelab._core import __version__  # noqa: F401
