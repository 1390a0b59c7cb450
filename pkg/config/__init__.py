from .config import (
    LOGGING_CONFIG,
    ExperimentConfig,
    get_config,
    load_experiment_config,
    optimizer_config,
    protocol_config,
    report_config,
    tolerance_config,
)
