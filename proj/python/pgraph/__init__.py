"""Possibility-graph planner for a robot that can walk, crawl and jump."""

from ._core import (
    Scenario,
    ScenarioError,
    TraceError,
    bench,
    builtin_names,
    min_accel_trajectory,
    parabola_for,
    plan,
    pose_distance,
    read_trace,
    render_svg,
)

__all__ = [
    "Scenario",
    "ScenarioError",
    "TraceError",
    "bench",
    "builtin_names",
    "min_accel_trajectory",
    "parabola_for",
    "plan",
    "pose_distance",
    "read_trace",
    "render_svg",
]
