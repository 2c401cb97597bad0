"""Coherent perfect absorption of quantum light.

Two engines over labeled optical modes: a truncated Fock tensor engine for
discrete-variable and non-Gaussian states, and a mean/covariance engine for
Gaussian states.  Both share the same standing-wave decomposition of the
absorber: a balanced basis change onto cosine/sine modes, full (or partial)
absorption of the cosine mode into an environment mode, and the basis change
back.
"""
from . import dv, fock, gaussian, nongaussian
from .absorber import CANONICAL, AbsorberSpec
from .modes import C, ENV_C, K, MINUS_K, S, ModeKind, ModeLabel

__all__ = [
    "AbsorberSpec",
    "CANONICAL",
    "ModeKind",
    "ModeLabel",
    "K",
    "MINUS_K",
    "C",
    "S",
    "ENV_C",
    "dv",
    "fock",
    "gaussian",
    "nongaussian",
]
