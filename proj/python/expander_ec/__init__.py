"""Erasure list decoding of expander codes."""

from ._core import (
    AdviceTooLarge,
    Code,
    InnerCode,
    affine_equal,
    enumerate_affine,
)

__all__ = ["AdviceTooLarge", "Code", "InnerCode", "affine_equal", "enumerate_affine"]
