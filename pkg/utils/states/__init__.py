from .density import (
    DensityOperator,
    Factor,
    PureState,
    State,
    SystemLayout,
    as_density,
    as_pure,
    basis_state,
    dephase,
    is_incoherent,
    is_quantum_incoherent,
    maximally_coherent,
    partial_trace_state,
    purify,
    random_density,
    random_pure,
    relabel,
    schmidt_coefficients,
    schmidt_state,
    state_from_json,
    state_to_json,
    tensor,
    tensor_power,
)
