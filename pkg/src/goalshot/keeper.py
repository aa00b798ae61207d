"""Shot resolution against a pursuing keeper and static defenders.

The keeper reacts after a configurable delay, then each step heads at full
speed for the closest point to itself on the ball's current travel ray
(re-estimated every step, optionally blurred by positioning noise). The
ball is caught when its path segment for a step passes within catch_radius
of the keeper, or within defender_catch_radius of any field defender,
before crossing the goal line; checking the whole segment rather than the
endpoint keeps a fast ball from tunneling through a player's reach. A ball
that dies en route also counts as caught: the keeper collects it.
Otherwise the crossing lateral decides goal vs wide.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dynamics import STOP_SPEED, BallState, DynamicsConfig, kick, step
from .geometry import FieldConfig, Vec2

DEFAULT_DEFENDER_CATCH_RADIUS = 1.0


class ShotResult(enum.Enum):
    GOAL = "GOAL"
    CAUGHT = "CAUGHT"
    WIDE = "WIDE"
    NO_KICK = "NO_KICK"


@dataclass(frozen=True)
class KeeperModel:
    """Parametric goalkeeper for labeling and policy evaluation."""

    max_speed: float = 0.28
    reaction_delay: int = 2
    catch_radius: float = 0.75
    positioning_noise: float = 0.15

    def __post_init__(self) -> None:
        if (self.max_speed < 0 or self.reaction_delay < 0
                or self.catch_radius < 0 or self.positioning_noise < 0):
            raise ValueError("KeeperModel parameters must be non-negative")


def _segment_distance(point: Vec2, a: Vec2, b: Vec2) -> float:
    """Distance from point to the segment a-b."""
    ab = b - a
    length_sq = ab.dot(ab)
    if length_sq < 1e-18:
        return point.distance_to(a)
    t = max(0.0, min(1.0, (point - a).dot(ab) / length_sq))
    return point.distance_to(a + ab * t)


def _pursuit_point(ball: Vec2, velocity: Vec2, keeper: Vec2) -> Vec2:
    """Closest point to the keeper on the ball's forward travel ray."""
    speed = velocity.norm()
    if speed < 1e-9:
        return ball
    direction = velocity * (1.0 / speed)
    t = max(0.0, (keeper - ball).dot(direction))
    return ball + direction * t


def simulate_shot(ball: Vec2, ball_velocity: Vec2, target: Vec2, power: float,
                  keeper_start: Vec2, defenders: Sequence[Vec2],
                  keeper_model: KeeperModel, dynamics: DynamicsConfig,
                  field: FieldConfig, rng: np.random.Generator,
                  defender_catch_radius: float = DEFAULT_DEFENDER_CATCH_RADIUS,
                  max_steps: int = 10_000) -> tuple[ShotResult, int]:
    """Kick the ball at the target and resolve the episode.

    Returns the outcome and the number of steps simulated. Deterministic
    for a given rng state.
    """
    direction = (target - ball).angle()
    state = kick(BallState.at_rest(ball), power, direction, dynamics)
    state = BallState(state.position, ball_velocity, state.acceleration)
    keeper = keeper_start
    for n in range(1, max_steps + 1):
        prev = state.position
        state = step(state, dynamics, rng)
        pos = state.position
        # Clip the step's path at the goal line; interceptions only count
        # before the ball crosses.
        crossed = pos.x >= field.goal_line_x
        if crossed:
            t = (field.goal_line_x - prev.x) / (pos.x - prev.x)
            path_end = Vec2(field.goal_line_x, prev.y + t * (pos.y - prev.y))
        else:
            path_end = pos
        if _segment_distance(keeper, prev, path_end) <= keeper_model.catch_radius:
            return ShotResult.CAUGHT, n
        for defender in defenders:
            if _segment_distance(defender, prev, path_end) <= defender_catch_radius:
                return ShotResult.CAUGHT, n
        if crossed:
            if abs(path_end.y) <= field.goal_width / 2:
                return ShotResult.GOAL, n
            return ShotResult.WIDE, n
        if state.velocity.norm() < STOP_SPEED:
            return ShotResult.CAUGHT, n
        if n > keeper_model.reaction_delay and keeper_model.max_speed > 0:
            aim_point = _pursuit_point(pos, state.velocity, keeper)
            if keeper_model.positioning_noise > 0:
                jitter = rng.normal(0.0, keeper_model.positioning_noise, 2)
                aim_point = Vec2(aim_point.x + jitter[0], aim_point.y + jitter[1])
            gap = aim_point - keeper
            reach = gap.norm()
            if reach > keeper_model.max_speed:
                gap = gap * (keeper_model.max_speed / reach)
            keeper = keeper + gap
    return ShotResult.CAUGHT, max_steps
