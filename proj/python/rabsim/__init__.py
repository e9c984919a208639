"""Two-atom Rydberg gate simulator (amplitude-modulated drive).

Thin Python layer over the C++ core: Hamiltonian builders, fixed-step
RK4 propagation (pure and master equation), fidelity metrics and the
scenario runners used by the CLI.
"""

from ._core import (  # noqa: F401
    ConfigError,
    Frame,
    GateTarget,
    IntegratorConfig,
    IntegratorError,
    JumpOperators,
    PulseShape,
    Scenario,
    SystemParams,
    TimeOperator,
    __version__,
    accumulated_stark_phase,
    angular_from_mhz,
    antiblockade_vdw_target,
    average_fidelity,
    base_step,
    broken_distance,
    broken_vdw_target,
    builtin_scenario_json,
    builtin_scenario_names,
    default_lindblad_config,
    default_params,
    default_pure_config,
    drive_field,
    effective_detuning,
    effective_hamiltonian,
    effective_rabi,
    final_effective_hamiltonian,
    full_hamiltonian,
    gate_duration_for_phase,
    load_scenario_file,
    parse_scenario,
    product_state,
    propagate_basis,
    propagate_lindblad,
    propagate_pure,
    pulse_amplitude,
    rab_distance,
    rabi_period,
    reference_state,
    run_scenario,
    sector_hamiltonian,
    self_check,
    single_atom_hamiltonian,
    state_fidelity_mixed,
    state_fidelity_pure,
    unwrap_phase,
    validate,
    vdw_strength,
)
