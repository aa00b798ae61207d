"""Shot policies behind one decide() interface.

Every thresholded policy shares stage one: the goal is discretized into
aim points and only those whose analytic goal-entry probability clears
p_goal_threshold survive. Stage two ranks the survivors (by the neural
score for the MLP policy, by a two-variable linear discriminant for the
LDA baseline) and kicks at the best one if it clears the stage-two bar.
The naive reference always shoots at the goal center.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Protocol, Sequence

import numpy as np

from .aim import AimConfig, ShotQuery, discretize_targets, p_goal, within_horizon
from .geometry import FieldConfig, Vec2
from .mlp import MlpParams, forward, score
from .scenes import KickScene, Label, angle_at, extract_features


class Action(enum.Enum):
    KICK = "KICK"
    NO_KICK = "NO_KICK"


@dataclass(frozen=True)
class PolicyConfig:
    p_goal_threshold: float = 0.70
    score_threshold: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 < self.p_goal_threshold < 1.0:
            raise ValueError("p_goal_threshold must be in (0, 1)")
        if not 0.0 < self.score_threshold < 1.0:
            raise ValueError("score_threshold must be in (0, 1)")


@dataclass(frozen=True)
class KickDecision:
    """out_of_range marks a NO_KICK forced by the sigma-model horizon."""

    action: Action
    target: Vec2 | None = None
    neural_score: float | None = None
    p_goal: float | None = None
    out_of_range: bool = False


_NO_KICK = KickDecision(Action.NO_KICK)
_OUT_OF_RANGE = KickDecision(Action.NO_KICK, out_of_range=True)


@dataclass(frozen=True)
class LdaModel:
    """Linear discriminant over (keeper distance to ball, keeper angle)."""

    weight_distance: float
    weight_angle: float
    bias: float

    def discriminant(self, keeper_distance: float, keeper_angle: float) -> float:
        return (self.weight_distance * keeper_distance
                + self.weight_angle * keeper_angle + self.bias)


def stage_one_survivors(ball: Vec2, field: FieldConfig, aim_config: AimConfig,
                        policy_config: PolicyConfig) -> list[tuple[Vec2, float]]:
    """(target, p_goal) pairs passing the analytic filter; shared by all
    thresholded policies."""
    survivors = []
    for target in discretize_targets(field, aim_config):
        result = p_goal(ShotQuery(ball, target), field, aim_config)
        if result.p_goal >= policy_config.p_goal_threshold:
            survivors.append((target, result.p_goal))
    return survivors


def _best(candidates: list[tuple[Vec2, float, float]]) -> tuple[Vec2, float, float]:
    # Max stage-two value; ties go to the target nearest the goal center,
    # then to the smaller lateral coordinate.
    return min(candidates, key=lambda c: (-c[1], abs(c[0].y), c[0].y))


def mlp_policy_decide(scene: KickScene, model: MlpParams, field: FieldConfig,
                      aim_config: AimConfig,
                      policy_config: PolicyConfig) -> KickDecision:
    """Two-stage decision: analytic p_goal filter, then best neural score."""
    if not within_horizon(scene.ball, field, aim_config):
        return _OUT_OF_RANGE
    candidates = []
    for target, pg in stage_one_survivors(scene.ball, field, aim_config, policy_config):
        features = extract_features(replace(scene, target=target), field)
        s = score(*forward(model, features.values))
        if s > policy_config.score_threshold:
            candidates.append((target, s, pg))
    if not candidates:
        return _NO_KICK
    target, s, pg = _best(candidates)
    return KickDecision(Action.KICK, target=target, neural_score=s, p_goal=pg)


def lda_train(scenes: Sequence[KickScene], field: FieldConfig) -> LdaModel:
    """Least-squares fit of the two-variable discriminant with labels +/-1."""
    rows = []
    targets = []
    for scene in scenes:
        if scene.label is None:
            raise ValueError("every scene must be labeled")
        rows.append([scene.keeper.distance_to(scene.ball),
                     angle_at(scene.ball, scene.keeper, scene.target), 1.0])
        targets.append(1.0 if scene.label is Label.GOAL else -1.0)
    y = np.array(targets)
    if np.all(y > 0) or np.all(y < 0):
        raise ValueError("both classes must be present")
    x = np.array(rows)
    try:
        w = np.linalg.solve(x.T @ x, x.T @ y)
    except np.linalg.LinAlgError:
        raise ValueError("singular normal equations; features carry no spread") from None
    return LdaModel(weight_distance=float(w[0]), weight_angle=float(w[1]),
                    bias=float(w[2]))


def lda_policy_decide(scene: KickScene, model: LdaModel, field: FieldConfig,
                      aim_config: AimConfig,
                      policy_config: PolicyConfig) -> KickDecision:
    """Same stage-one filter; stage two kicks where the discriminant is
    largest, provided it is positive."""
    if not within_horizon(scene.ball, field, aim_config):
        return _OUT_OF_RANGE
    keeper_distance = scene.keeper.distance_to(scene.ball)
    candidates = []
    for target, pg in stage_one_survivors(scene.ball, field, aim_config, policy_config):
        value = model.discriminant(keeper_distance,
                                   angle_at(scene.ball, scene.keeper, target))
        if value > 0.0:
            candidates.append((target, value, pg))
    if not candidates:
        return _NO_KICK
    target, _, pg = _best(candidates)
    return KickDecision(Action.KICK, target=target, p_goal=pg)


def naive_center_policy(scene: KickScene, field: FieldConfig,
                        aim_config: AimConfig,
                        policy_config: PolicyConfig) -> KickDecision:
    """Reference floor: always kick at the goal center while in range."""
    if not within_horizon(scene.ball, field, aim_config):
        return _OUT_OF_RANGE
    return KickDecision(Action.KICK, target=field.goal_center)


class Policy(Protocol):
    name: str

    def decide(self, scene: KickScene) -> KickDecision: ...


@dataclass(frozen=True, eq=False)
class MlpPolicy:
    model: MlpParams
    field: FieldConfig
    aim_config: AimConfig
    policy_config: PolicyConfig
    name: str = "mlp"

    def decide(self, scene: KickScene) -> KickDecision:
        return mlp_policy_decide(scene, self.model, self.field, self.aim_config,
                                 self.policy_config)


@dataclass(frozen=True, eq=False)
class LdaPolicy:
    model: LdaModel
    field: FieldConfig
    aim_config: AimConfig
    policy_config: PolicyConfig
    name: str = "lda"

    def decide(self, scene: KickScene) -> KickDecision:
        return lda_policy_decide(scene, self.model, self.field, self.aim_config,
                                 self.policy_config)


@dataclass(frozen=True, eq=False)
class NaiveCenterPolicy:
    field: FieldConfig
    aim_config: AimConfig
    policy_config: PolicyConfig
    name: str = "center"

    def decide(self, scene: KickScene) -> KickDecision:
        return naive_center_policy(scene, self.field, self.aim_config,
                                   self.policy_config)
