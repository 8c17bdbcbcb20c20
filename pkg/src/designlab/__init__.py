"""designlab: pseudorandomness diagnostics for ensembles of unitaries.

Frame potentials, out-of-time-order correlators, exact Weingarten calculus,
Clifford tableaux, scrambling diagnostics and the complexity bounds they
imply, with a CLI front end (``designlab --help``).
"""

from .cliffordgrp import CliffordTableau, clifford_ensemble, random_clifford
from .densemat import (
    Ensemble,
    brickwork_ensemble,
    gue_hamiltonian,
    haar_ensemble,
    haar_unitary,
    pauli_ensemble,
    pauli_to_dense,
    trivial_ensemble,
)
from .estimate import Estimate
from .framepot import (
    frame_potential_exact,
    frame_potential_mc,
    frame_potential_via_oto,
    generalized_F,
    generalized_G,
    thermal_W,
    time_averaged_frame_potential,
)
from .otolab import OtoSpec, haar_average_oto_exact, oto_correlator, predict
from .paulialg import PauliString, commutes, from_label, identity, k_phase, mul
from .scrambling import IoPartition, catch_game, choi_state, mutual_info_2
from .wg import haar_frame_potential_exact, q_inverse, q_matrix, weingarten

__all__ = [
    "CliffordTableau", "clifford_ensemble", "random_clifford",
    "Ensemble", "brickwork_ensemble", "gue_hamiltonian", "haar_ensemble",
    "haar_unitary", "pauli_ensemble", "pauli_to_dense", "trivial_ensemble",
    "Estimate",
    "frame_potential_exact", "frame_potential_mc", "frame_potential_via_oto",
    "generalized_F", "generalized_G", "thermal_W", "time_averaged_frame_potential",
    "OtoSpec", "haar_average_oto_exact", "oto_correlator", "predict",
    "PauliString", "commutes", "from_label", "identity", "k_phase", "mul",
    "IoPartition", "catch_game", "choi_state", "mutual_info_2",
    "haar_frame_potential_exact", "q_inverse", "q_matrix", "weingarten",
]

__version__ = "0.1.0"
