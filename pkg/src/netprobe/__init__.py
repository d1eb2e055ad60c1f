"""Connectivity and coupling estimation for oscillator networks via local probing.

The package splits into graph construction (`graphs`), spectral constraints
(`spectra`), degree-sequence enumeration and selection (`degrees`), coupling
estimation (`coupling`), exact Gaussian probe dynamics (`oscillators`) and
the seeded experiment harness (`experiments`, `cli`).
"""
from .coupling import CouplingCandidates, candidate_couplings, coupling_experiment
from .degrees import (
    Estimate,
    SolutionSet,
    brute_force_solutions,
    enumerate_solutions,
    enumerate_with_fallback,
    figure_of_merit,
    select_estimate,
)
from .graphs import (
    Graph,
    build_laplacian,
    degree_sequence,
    generate_ba,
    generate_er_gnl,
    generate_er_gnp,
    generate_tree,
    generate_ws,
    make_graph,
    read_edge_list,
    write_edge_list,
)
from .oscillators import (
    GaussianState,
    OscillatorNetwork,
    ProbeSetup,
    SweepResult,
    evolve_covariance,
    evolve_mean_excitation,
    frequency_sweep,
    initial_covariance,
    network_eigenfrequencies,
)
from .spectra import (
    ConstraintSet,
    InconsistentSpectrumError,
    build_constraints,
    frequencies_to_spectrum,
    laplace_spectrum,
    perturb_values,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "make_graph",
    "build_laplacian",
    "degree_sequence",
    "generate_er_gnl",
    "generate_er_gnp",
    "generate_ba",
    "generate_ws",
    "generate_tree",
    "read_edge_list",
    "write_edge_list",
    "laplace_spectrum",
    "build_constraints",
    "frequencies_to_spectrum",
    "perturb_values",
    "ConstraintSet",
    "InconsistentSpectrumError",
    "SolutionSet",
    "Estimate",
    "enumerate_solutions",
    "enumerate_with_fallback",
    "brute_force_solutions",
    "figure_of_merit",
    "select_estimate",
    "CouplingCandidates",
    "candidate_couplings",
    "coupling_experiment",
    "OscillatorNetwork",
    "ProbeSetup",
    "GaussianState",
    "SweepResult",
    "network_eigenfrequencies",
    "initial_covariance",
    "evolve_mean_excitation",
    "evolve_covariance",
    "frequency_sweep",
]
