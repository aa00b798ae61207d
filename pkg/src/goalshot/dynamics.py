"""Ball motion model of the 2D soccer simulator.

Per simulation step the ball moves by u = v + a + noise, the velocity
becomes decay * u and the acceleration resets to zero. The noise term is
drawn per component, independently and uniformly from [-r_max, +r_max]
with r_max = noise_coefficient * |v + a|, so the disturbance scales with
how fast the ball travels. The displacement is capped at max_speed, which
keeps |velocity| <= max_speed after every step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import FieldConfig, Vec2

# A rolling ball below this speed (m/step) is considered at rest.
STOP_SPEED = 1e-3


@dataclass(frozen=True)
class DynamicsConfig:
    """Simulator motion constants (per-step units)."""

    decay: float = 0.94
    noise_coefficient: float = 0.05
    max_speed: float = 3.0
    kick_power_rate: float = 0.027
    max_power: float = 100.0

    def __post_init__(self) -> None:
        if not 0.0 < self.decay < 1.0:
            raise ValueError(f"decay must be in (0, 1), got {self.decay}")
        if self.noise_coefficient < 0.0:
            raise ValueError("noise_coefficient must be >= 0")
        if self.max_speed <= 0.0 or self.kick_power_rate <= 0.0 or self.max_power <= 0.0:
            raise ValueError("max_speed, kick_power_rate and max_power must be positive")


@dataclass(frozen=True)
class BallState:
    position: Vec2
    velocity: Vec2
    acceleration: Vec2 = Vec2(0.0, 0.0)

    @staticmethod
    def at_rest(position: Vec2) -> BallState:
        return BallState(position, Vec2(0.0, 0.0), Vec2(0.0, 0.0))


@dataclass(frozen=True)
class CrossingOutcome:
    """Result of rolling a ball out toward the goal line.

    lateral_at_goal_line is only meaningful when crossed is True; it is the
    y coordinate linearly interpolated at the instant x reaches the line.
    """

    crossed: bool
    lateral_at_goal_line: float | None
    steps_taken: int


def step(state: BallState, config: DynamicsConfig,
         rng: np.random.Generator | None) -> BallState:
    """Advance the ball one simulation step.

    `rng` may be None only when the config has zero noise.
    """
    bx = state.velocity.x + state.acceleration.x
    by = state.velocity.y + state.acceleration.y
    r_max = config.noise_coefficient * math.hypot(bx, by)
    if r_max > 0.0:
        if rng is None:
            raise ValueError("rng is required when noise_coefficient > 0")
        nx, ny = rng.uniform(-r_max, r_max, 2)
        ux, uy = bx + nx, by + ny
    else:
        ux, uy = bx, by
    u_norm = math.hypot(ux, uy)
    if u_norm > config.max_speed:
        scale = config.max_speed / u_norm
        ux *= scale
        uy *= scale
    return BallState(
        position=Vec2(state.position.x + ux, state.position.y + uy),
        velocity=Vec2(config.decay * ux, config.decay * uy),
        acceleration=Vec2(0.0, 0.0),
    )


def kick(state: BallState, power: float, direction: float,
         config: DynamicsConfig) -> BallState:
    """Set the ball's acceleration for an impulse of the given power.

    `direction` is radians from the +x axis. Position and velocity are
    untouched; the impulse takes effect on the next step.
    """
    if not 0.0 <= power <= config.max_power:
        raise ValueError(f"power must be in [0, {config.max_power}], got {power}")
    magnitude = config.kick_power_rate * power
    return BallState(
        position=state.position,
        velocity=state.velocity,
        acceleration=Vec2.from_angle(direction, magnitude),
    )


def rollout_to_goal_line(state: BallState, config: DynamicsConfig,
                         field: FieldConfig, rng: np.random.Generator | None,
                         max_steps: int = 10_000) -> CrossingOutcome:
    """Step the ball until it crosses the goal line or comes to rest.

    The lateral coordinate at the crossing is linearly interpolated inside
    the crossing step. A ball that never reaches the line (speed drops
    below STOP_SPEED, or max_steps elapses) reports crossed=False.
    """
    if state.position.x >= field.goal_line_x:
        raise ValueError("ball must start before the goal line")
    current = state
    for n in range(1, max_steps + 1):
        prev = current.position
        current = step(current, config, rng)
        pos = current.position
        if pos.x >= field.goal_line_x:
            t = (field.goal_line_x - prev.x) / (pos.x - prev.x)
            lateral = prev.y + t * (pos.y - prev.y)
            return CrossingOutcome(True, lateral, n)
        if current.velocity.norm() < STOP_SPEED:
            return CrossingOutcome(False, None, n)
    return CrossingOutcome(False, None, max_steps)


def travel_range(initial_speed: float, decay: float) -> float:
    """Total noise-free distance a rolling ball covers before stopping.

    Geometric series of the per-step displacements: speed / (1 - decay).
    """
    if not 0.0 < decay < 1.0:
        raise ValueError(f"decay must be in (0, 1), got {decay}")
    if initial_speed < 0.0:
        raise ValueError("initial_speed must be >= 0")
    return initial_speed / (1.0 - decay)
