"""Analytic goal-entry probability for a shot at a point on the goal line.

The lateral scatter of a shot grows with distance: a ball kicked from d
meters away arrives on the goal line with an approximately Gaussian lateral
error of standard deviation

    sigma(d) = -sigma_coefficient * ln(1 - d / sigma_horizon).

A shot misses left of the goal when the error carries it outside the left
post, and symmetrically on the right. With S_l and S_r the signed offsets
of the posts from the shooting line (positive = left of the line) and d_l,
d_r the ball-to-post distances,

    P(left)  = Phi(-S_l / sigma(d_l)),
    P(right) = Phi(+S_r / sigma(d_r)),
    P(goal)  = 1 - P(left) - P(right).

Tails are evaluated in closed form through the error function; numerical
quadrature exists only as a test oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import FieldConfig, Ray, Vec2, signed_offset


@dataclass(frozen=True)
class AimConfig:
    sigma_coefficient: float = 1.88
    sigma_horizon: float = 45.0
    p_goal_threshold: float = 0.70
    target_count: int = 15
    target_inset: float = 0.25

    def __post_init__(self) -> None:
        if self.sigma_coefficient <= 0.0:
            raise ValueError("sigma_coefficient must be positive")
        if self.sigma_horizon <= 0.0:
            raise ValueError("sigma_horizon must be positive")
        if not 0.0 < self.p_goal_threshold < 1.0:
            raise ValueError("p_goal_threshold must be in (0, 1)")
        if self.target_count < 1:
            raise ValueError("target_count must be >= 1")
        if self.target_inset < 0.0:
            raise ValueError("target_inset must be >= 0")


@dataclass(frozen=True)
class ShotQuery:
    """Ball position plus an aim point on the goal line."""

    ball: Vec2
    target: Vec2


@dataclass(frozen=True)
class AimResult:
    """Miss-left / miss-right / goal probabilities; sums to 1 by construction."""

    p_left: float
    p_right: float
    p_goal: float


def gaussian_cdf(z: float) -> float:
    """Standard normal CDF."""
    return 0.5 * (1.0 + math.erf(z / math.sqrt(2.0)))


def sigma(d: float, config: AimConfig) -> float:
    """Lateral standard deviation of a shot after d meters of travel.

    Strictly increasing in d; diverges at the horizon, so d must satisfy
    0 <= d < sigma_horizon.
    """
    if d < 0.0:
        raise ValueError(f"distance must be >= 0, got {d}")
    if d >= config.sigma_horizon:
        raise ValueError(
            f"distance {d} is at or beyond the sigma horizon {config.sigma_horizon}")
    return -config.sigma_coefficient * math.log(1.0 - d / config.sigma_horizon)


def _validate_query(query: ShotQuery, field: FieldConfig) -> None:
    if abs(query.target.x - field.goal_line_x) > 1e-9:
        raise ValueError("target must lie on the goal line")
    if query.ball.x >= field.goal_line_x:
        raise ValueError("ball must be in front of the goal line")
    if abs(query.target.y) > field.goal_width / 2 + 1e-9:
        raise ValueError("target must lie within the goal mouth")


def _tails(query: ShotQuery, field: FieldConfig,
           config: AimConfig) -> tuple[float, float]:
    _validate_query(query, field)
    line = Ray.toward(query.ball, query.target)
    d_l = query.ball.distance_to(field.post_left)
    d_r = query.ball.distance_to(field.post_right)
    sigma_l = sigma(d_l, config)
    sigma_r = sigma(d_r, config)
    s_l = signed_offset(line, field.post_left)
    s_r = signed_offset(line, field.post_right)
    # A valid ball sits strictly before the goal line, so both post
    # distances and both sigmas are positive.
    return gaussian_cdf(-s_l / sigma_l), gaussian_cdf(s_r / sigma_r)


def p_miss_left(query: ShotQuery, field: FieldConfig, config: AimConfig) -> float:
    """Probability the shot drifts outside the left post."""
    return _tails(query, field, config)[0]


def p_miss_right(query: ShotQuery, field: FieldConfig, config: AimConfig) -> float:
    """Probability the shot drifts outside the right post."""
    return _tails(query, field, config)[1]


def p_goal(query: ShotQuery, field: FieldConfig, config: AimConfig) -> AimResult:
    """Full left/right/goal probability split for one aim point."""
    left, right = _tails(query, field, config)
    return AimResult(p_left=left, p_right=right, p_goal=1.0 - left - right)


def within_horizon(ball: Vec2, field: FieldConfig, config: AimConfig) -> bool:
    """True when both posts are close enough for the sigma model to apply."""
    return (ball.distance_to(field.post_left) < config.sigma_horizon
            and ball.distance_to(field.post_right) < config.sigma_horizon)


def discretize_targets(field: FieldConfig, config: AimConfig) -> list[Vec2]:
    """Evenly spaced aim points on the goal line, inset from each post.

    Sorted by lateral coordinate; a single target degenerates to the goal
    center.
    """
    half = field.goal_width / 2 - config.target_inset
    if half < 0.0:
        raise ValueError("target_inset exceeds the goal half-width")
    n = config.target_count
    if n == 1:
        return [Vec2(field.goal_line_x, 0.0)]
    step = 2.0 * half / (n - 1)
    return [Vec2(field.goal_line_x, -half + i * step) for i in range(n)]
