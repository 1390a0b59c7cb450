# -*- coding: utf-8 -*-
from .matrix_ops import (
    Spectrum,
    check_hermitian,
    check_state,
    eigenvalues,
    hermitian_eig,
    partial_trace,
    permute_factors,
    relative_entropy,
    shannon_entropy,
    tensor_all,
    tensor_product,
    trace_distance,
    trace_norm,
    von_neumann_entropy,
)
