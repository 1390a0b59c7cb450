from .coherence import (
    Certification,
    MeasureResult,
    coherence_cost,
    coherence_of_formation,
    coherent_state_for_rate,
    distillable_coherence,
    entanglement_entropy,
    probabilities_for_entropy,
    qi_relative_entropy,
    relative_entropy_of_coherence,
)
