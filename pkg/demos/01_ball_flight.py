"""How the ball moves: per-step decay, kick impulses, and noise.

The ball advances each step by u = velocity + acceleration + noise, then
keeps decay * u as its new velocity. With zero noise the total rolling
distance is the geometric series speed / (1 - decay); with noise the
lateral scatter at the goal line grows with shot distance.
"""

import numpy as np

from goalshot import (BallState, DynamicsConfig, FieldConfig, Vec2, kick,
                      rollout_to_goal_line, step, travel_range)

field = FieldConfig()
noiseless = DynamicsConfig(noise_coefficient=0.0)

print("=== Rolling range (zero noise) ===")
for speed in (1.0, 2.0, 2.7):
    state = BallState(Vec2(0.0, 0.0), Vec2(speed, 0.0))
    steps = 0
    while state.velocity.norm() >= 1e-6:
        state = step(state, noiseless, None)
        steps += 1
    print(f"initial speed {speed:.1f} m/step: closed form "
          f"{travel_range(speed, noiseless.decay):7.3f} m, "
          f"stepper {state.position.x:7.3f} m in {steps} steps")

print()
print("=== A full-power kick from 20 m out (zero noise) ===")
ball = Vec2(field.goal_line_x - 20.0, 0.0)
state = kick(BallState.at_rest(ball), power=100.0, direction=0.0, config=noiseless)
for n in range(1, 11):
    state = step(state, noiseless, None)
    gone = state.position.x - ball.x
    print(f"step {n:2d}: travelled {gone:6.2f} m, speed {state.velocity.norm():.3f}")
    if state.position.x >= field.goal_line_x:
        print("      ... crossed the goal line")
        break

print()
print("=== Lateral scatter at the goal line grows with distance ===")
config = DynamicsConfig()  # default 5% speed-proportional noise
for distance in (8.0, 16.0, 24.0, 32.0):
    rng = np.random.default_rng(7)
    laterals = []
    for _ in range(3000):
        state = kick(BallState.at_rest(Vec2(field.goal_line_x - distance, 0.0)),
                     100.0, 0.0, config)
        outcome = rollout_to_goal_line(state, config, field, rng)
        if outcome.crossed:
            laterals.append(outcome.lateral_at_goal_line)
    print(f"distance {distance:4.1f} m: std of crossing lateral "
          f"{np.std(laterals):.3f} m over {len(laterals)} shots")
