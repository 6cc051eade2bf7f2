"""BB84 key rates for chirped Gaussian single-photon pulses in dispersive,
lossy fiber with jittery, dark-count-prone detectors.

The pipeline: `twf` broadens the pulse, `detection` turns spreads into
window probabilities, `keyrate` assembles QBER and secret-key rate,
`analysis` sweeps and optimizes, `cli` exposes it all on the command line.
"""

from .analysis import (
    ChirpScanResult,
    ScenarioResult,
    SweepResult,
    max_distance,
    run_scenario,
    scan_chirp,
    sweep_distance,
)
from .detection import Detector, PulseTrain, WindowProbabilities
from .keyrate import (
    Channel,
    DarkCountModel,
    DarkCounts,
    ProtocolPoint,
    ScenarioParams,
    TransmittanceConvention,
    evaluate_point,
)
from .numerics import Bracket, BracketError, NonConvergenceError, QuadratureSpec
from .twf import GaussianState, Medium, Moments, Pulse

__version__ = "0.1.0"

__all__ = [
    "Bracket",
    "BracketError",
    "Channel",
    "ChirpScanResult",
    "DarkCountModel",
    "DarkCounts",
    "Detector",
    "GaussianState",
    "Medium",
    "Moments",
    "NonConvergenceError",
    "ProtocolPoint",
    "Pulse",
    "PulseTrain",
    "QuadratureSpec",
    "ScenarioParams",
    "ScenarioResult",
    "SweepResult",
    "TransmittanceConvention",
    "WindowProbabilities",
    "evaluate_point",
    "max_distance",
    "run_scenario",
    "scan_chirp",
    "sweep_distance",
    "__version__",
]
