"""Simulation and decoding of the Phi-Lambda anyon model on a planar Z6 spin lattice."""

from .algebra import AnyonKind, classify, cross_pair_fusion_table, fuse, split_pair_distribution
from .decoder import DecodeReport, Variant, Verdict, decode, static_decode
from .lattice import SpinConfig, build_geometry, vacuum_config
from .noise import ErrorParams, FlipRecord, sample_errors

__all__ = [
    "AnyonKind", "classify", "cross_pair_fusion_table", "fuse", "split_pair_distribution",
    "DecodeReport", "Variant", "Verdict", "decode", "static_decode",
    "SpinConfig", "build_geometry", "vacuum_config",
    "ErrorParams", "FlipRecord", "sample_errors",
]
