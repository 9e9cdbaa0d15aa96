"""Full counting statistics and moment-matrix witnesses for small open quantum emitters."""

from ._core import (
    CircuitParams,
    CoupledAtomsParams,
    CumulantTable,
    DrivenQubitParams,
    FcsError,
    ModelInstance,
    RateFunctionSample,
    WitnessReport,
    build_circuit_atoms,
    build_coupled_atoms,
    build_driven_qubit,
    cumulants_fd,
    cumulants_to_moments,
    empirical_stats,
    evaluate_witness,
    first_cumulants_analytic,
    m3_appendix,
    m3_direct,
    moment_matrix,
    rate_function,
    scgf,
    simulate_counts,
    steady_state,
    total_emission_rate,
    __version__,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
