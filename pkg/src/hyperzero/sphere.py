"""Points of the Riemann sphere: complex numbers plus a single marker for infinity."""

from __future__ import annotations

from typing import Union


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

SpherePoint = Union[complex, _Infinity]


def is_inf(z) -> bool:
    return z is INF
