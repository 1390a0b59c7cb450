from .kraus import (
    KrausChannel,
    ReplacementChannel,
    apply,
    channel_from_json,
    channel_to_json,
    compose,
    controlled_channel,
    cyclic_shift_order,
    dephasing_channel,
    identity_channel,
    is_permutation_invariant,
    permutation_channel,
    random_incoherent_channel,
    random_unitary,
    register_shift,
    replacement_channel,
    symmetrize,
    tensor_channels,
    twirl_channel,
    unitary_channel,
)
