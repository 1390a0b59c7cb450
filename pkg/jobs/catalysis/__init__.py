# -*- coding: utf-8 -*-
from .catalytic_protocol import (
    CatalystState,
    FlaggedState,
    ProtocolTrace,
    RateVerdict,
    asymptotic_rate_feasible,
    build_catalyst,
    catalytic_pure_feasible,
    run_protocol,
)
