"""Relation automata, reduced words and growth of β-expansion semigroups."""

import json
import os

from ._core import (
    Automaton,
    Blocked,
    BetautoError,
    CapExceeded,
    automaton_from_json,
    isomorphic,
    kenyon_criterion,
    minimize,
)
from . import _core

__all__ = [
    "Automaton",
    "Blocked",
    "BetautoError",
    "CapExceeded",
    "Semigroup",
    "automaton_from_json",
    "describe_context",
    "isomorphic",
    "kenyon_criterion",
    "load_config",
    "mahler_nonfree_check",
    "minimize",
    "quick_free_sufficient",
    "verify_power_identity",
]


def load_config(config):
    """Config as a JSON string: accepts a dict, a JSON string or a file path."""
    if isinstance(config, dict):
        return json.dumps(config)
    if isinstance(config, (str, os.PathLike)) and os.path.exists(config):
        with open(config, encoding="utf-8") as f:
            return f.read()
    return str(config)


def Semigroup(config, max_states=1_000_000, force=False):
    return _core.Semigroup(load_config(config), max_states, force)


def describe_context(config):
    return _core.describe_context(load_config(config))


def quick_free_sufficient(config):
    return _core.quick_free_sufficient(load_config(config))


def mahler_nonfree_check(config):
    return _core.mahler_nonfree_check(load_config(config))


def verify_power_identity(config, lhs, rhs):
    """lhs, rhs: lists of (coefficient, exponent) terms in β."""
    return _core.verify_power_identity(load_config(config), lhs, rhs)
