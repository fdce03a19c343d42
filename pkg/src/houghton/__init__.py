"""Finite, checkable shadows of the Houghton-group cube complexes and their Morse theory."""

from .core import (Character, EventualInjection, compose, decode, deficiency_f, encode, identity,
                   transposition_tau)
from .complex import CubicalComplex, RegionSpec, SimplicialComplex, enumerate_region
from .homology import homology, reduced_homology, smith_normal_form
from .harness import ExperimentConfig, run, stability_sweep

__all__ = ["Character", "EventualInjection", "compose", "decode", "deficiency_f", "encode",
           "identity", "transposition_tau", "CubicalComplex", "RegionSpec", "SimplicialComplex",
           "enumerate_region", "homology", "reduced_homology", "smith_normal_form",
           "ExperimentConfig", "run", "stability_sweep"]
