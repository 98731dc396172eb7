from ._core import (
    DEFAULT_ORACLE_DIM,
    CoherenceSample,
    DomainError,
    OracleValues,
    TruncationReport,
    UndefinedCoherence,
    UsageError,
    alpha_of_tau,
    coherence_sample,
    convergence_check,
    g2,
    g2_oracle,
    hamiltonian_from_state,
    heisenberg_flow,
    mean_photon_number,
    oracle_values,
    r_of_tau,
    run_cli,
    state_from_hamiltonian,
)

__all__ = [name for name in dir() if not name.startswith("_")]
