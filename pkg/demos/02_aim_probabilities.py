"""The analytic goal-entry model, and how well it tracks the simulator.

A shot's lateral error at the goal line is modeled as a zero-mean Gaussian
whose spread sigma(d) grows with distance; the chance of staying between
the posts follows from two Gaussian tails. The second half of this script
is the calibration experiment: it compares the analytic p_goal against
brute-force rollouts of the actual ball dynamics, which use a different
noise mechanism, so the two columns agree in shape but not exactly.
"""

import numpy as np

from goalshot import (AimConfig, BallState, DynamicsConfig, FieldConfig,
                      ShotQuery, Vec2, discretize_targets, kick, p_goal,
                      rollout_to_goal_line, sigma)

field = FieldConfig()
aim = AimConfig()

print("=== sigma(d): aim noise vs distance ===")
for d in (5.0, 15.0, 25.0, 35.0, 44.0):
    print(f"d = {d:4.1f} m -> sigma {sigma(d, aim):6.3f} m")

print()
print("=== p_goal over the 15 discretized targets, ball 18 m out, 4 m wide ===")
ball = Vec2(field.goal_line_x - 18.0, 4.0)
for target in discretize_targets(field, aim):
    result = p_goal(ShotQuery(ball, target), field, aim)
    bar = "#" * int(40 * result.p_goal)
    print(f"target y {target.y:+6.2f}: p_goal {result.p_goal:.3f} "
          f"(left {result.p_left:.3f}, right {result.p_right:.3f}) {bar}")

print()
print("=== Calibration: analytic model vs full dynamics rollouts ===")
print("(the analytic constants are a fit to a different noise source, so")
print(" expect agreement in shape, not in value)")
dynamics = DynamicsConfig()
rng = np.random.default_rng(11)
target = Vec2(field.goal_line_x, 0.0)
print(f"{'distance':>9} {'analytic':>9} {'rollouts':>9}")
for distance in (6.0, 10.0, 14.0, 18.0, 22.0, 26.0):
    ball = Vec2(field.goal_line_x - distance, 0.0)
    analytic = p_goal(ShotQuery(ball, target), field, aim).p_goal
    goals = 0
    n = 4000
    for _ in range(n):
        state = kick(BallState.at_rest(ball), 100.0, 0.0, dynamics)
        outcome = rollout_to_goal_line(state, dynamics, field, rng)
        if outcome.crossed and abs(outcome.lateral_at_goal_line) <= field.goal_width / 2:
            goals += 1
    print(f"{distance:9.1f} {analytic:9.3f} {goals / n:9.3f}")
