"""Exact reachability decision engine for vector addition systems with states."""

from .core import OMEGA, Action, Config, Transition, Vass

__all__ = ["OMEGA", "Action", "Config", "Transition", "Vass"]
__version__ = "0.1.0"
