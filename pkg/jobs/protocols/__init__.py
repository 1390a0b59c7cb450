# -*- coding: utf-8 -*-
from .assisted_distillation import (
    CatalyticPlan,
    assisted_distillation,
    assisted_distillation_rate,
    catalytic_dilution_plan,
    catalytic_distillation_plan,
    collaboration_upper_bound,
    product_reduction_check,
)
from .state_merging import (
    MergeAnalysis,
    MergeBoundReport,
    conditional_entropy,
    iqsm_e0,
    merging_resources,
    schmidt_resource_for_rate,
    verify_merge_bound,
)
