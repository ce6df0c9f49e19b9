"""Capacity functionals of quantum channels and resource trade-off bounds."""
from . import channels, information, numerics, optimize, tradeoff
from ._backend import NAME as BACKEND
from .channels import QuantumChannel, apply, from_kraus, standard_channel
from .errors import ChancapError
from .optimize import (
    OptimizerConfig,
    estimate_quantum_capacity,
    maximize_coherent_information,
    maximize_holevo,
    maximize_qmi,
)
from .tradeoff import ChannelProfile, ResourceTriple

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ChancapError",
    "ChannelProfile",
    "OptimizerConfig",
    "QuantumChannel",
    "ResourceTriple",
    "apply",
    "channels",
    "estimate_quantum_capacity",
    "from_kraus",
    "information",
    "maximize_coherent_information",
    "maximize_holevo",
    "maximize_qmi",
    "numerics",
    "optimize",
    "standard_channel",
    "tradeoff",
]
