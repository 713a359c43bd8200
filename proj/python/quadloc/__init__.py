from ._core import (
    Error,
    ParseError,
    RobotParams,
    RuntimeFault,
    Simulation,
    foot_position,
    ldq,
    load_robot_params,
    run_scenario,
    stance_rank,
    support_closest,
    support_contains,
    support_polygon,
    zero_moment_point,
    zero_moment_point_inverse,
)

__all__ = [
    "Error",
    "ParseError",
    "RobotParams",
    "RuntimeFault",
    "Simulation",
    "foot_position",
    "ldq",
    "load_robot_params",
    "run_scenario",
    "stance_rank",
    "support_closest",
    "support_contains",
    "support_polygon",
    "zero_moment_point",
    "zero_moment_point_inverse",
]
