"""
内界（可达性）
Achievability bounds: feasibility range, R_I2, R_I1, convex envelopes
"""

from .FeasibilityRange import FeasibilityRange, feasibility_range, restart_rng
from .SimplexDescent import simplex_projection_rowwise, projected_gradient, dirichlet_rows
from .MemorylessSolver import MemorylessSolver, KernelSample, rate_inner_memoryless, kernel_rate
from .MarkovSolver import MarkovSolver, rate_inner_markov, sticks_to_table, table_to_sticks
from .ConvexEnvelope import lower_convex_envelope, lower_hull
from .InnerCurves import (
    memoryless_curve, markov_curve, inner_curve, envelope_curve, replay_witness,
    witness_digest, propagate_witnesses
)

__all__ = [
    'FeasibilityRange',
    'feasibility_range',
    'restart_rng',
    'simplex_projection_rowwise',
    'projected_gradient',
    'dirichlet_rows',
    'MemorylessSolver',
    'KernelSample',
    'rate_inner_memoryless',
    'kernel_rate',
    'MarkovSolver',
    'rate_inner_markov',
    'sticks_to_table',
    'table_to_sticks',
    'lower_convex_envelope',
    'lower_hull',
    'memoryless_curve',
    'markov_curve',
    'inner_curve',
    'envelope_curve',
    'replay_witness',
    'witness_digest',
    'propagate_witnesses'
]
