"""chirospec: coincidence spectroscopy of chiral molecules with entangled photon pairs."""

from .analysis import (
    DiscriminationWindow,
    LineShapeSignature,
    RegimeMap,
    classify_lineshape,
    discriminability,
    discrimination_window,
    regime_map,
)
from .biphoton import (
    BiphotonAmplitude,
    FrequencyGrid,
    JsaKind,
    default_grid,
    jsa_grid,
    jsa_value,
)
from .model import (
    Chirality,
    DressedTriad,
    DriveConfig,
    HermitianTriad,
    NoiseParams,
    build_rotating_hamiltonian,
    characteristic_invariants,
    dressed_states,
    perturbative_lambda1,
)
from .spectrum import (
    DetectorPair,
    SpectrumCurve,
    background_point,
    transmission_curve,
    transmission_point,
    zero_bandwidth_point,
)

__version__ = "0.1.0"

__all__ = [
    "BiphotonAmplitude",
    "Chirality",
    "DetectorPair",
    "DiscriminationWindow",
    "DressedTriad",
    "DriveConfig",
    "FrequencyGrid",
    "HermitianTriad",
    "JsaKind",
    "LineShapeSignature",
    "NoiseParams",
    "RegimeMap",
    "SpectrumCurve",
    "background_point",
    "build_rotating_hamiltonian",
    "characteristic_invariants",
    "classify_lineshape",
    "default_grid",
    "discriminability",
    "discrimination_window",
    "dressed_states",
    "jsa_grid",
    "jsa_value",
    "perturbative_lambda1",
    "regime_map",
    "transmission_curve",
    "transmission_point",
    "zero_bandwidth_point",
    "__version__",
]
