"""
Explicit Euler Weight Flows
"""
from .base import (
    FlowConfig,
    FlowState,
    FlowTrace,
    WeightFlow,
    TRACE_HEADER,
    convergence_error,
)
from .saddle import SaddleFlow, euler_update, flow_step, powered_target, run_flow
from .p2 import P2Flow, P2Result, node_energy, solve_p2_first

__all__ = [
    "FlowConfig",
    "FlowState",
    "FlowTrace",
    "WeightFlow",
    "TRACE_HEADER",
    "convergence_error",
    "SaddleFlow",
    "euler_update",
    "flow_step",
    "powered_target",
    "run_flow",
    "P2Flow",
    "P2Result",
    "solve_p2_first",
    "node_energy",
]
