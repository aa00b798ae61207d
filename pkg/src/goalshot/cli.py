"""Command-line entry point wiring the full pipeline.

Subcommands: gen-data, stats, train, eval, compare, aim-table. Every
command is deterministic given (config, seed), with a default seed of 0
and never the wall clock, and exits nonzero with a one-line diagnostic on
any error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import mlp
from .aim import ShotQuery, discretize_targets, p_goal
from .config import RunConfig, load_run_config
from .dynamics import BallState, kick, rollout_to_goal_line
from .experiment import report, run_experiment
from .geometry import Vec2
from .metrics import feature_relevance, ks2_curve, roc_curve, scored_samples
from .policies import LdaPolicy, MlpPolicy, NaiveCenterPolicy, lda_train
from .scenes import (Label, balance_by_replication, feature_matrix,
                     generate_synthetic_scenes, load_scenes, save_scenes,
                     split_dataset, univariate_stats)


def _load_config(args: argparse.Namespace) -> RunConfig:
    config = load_run_config(args.config) if args.config else RunConfig()
    if args.seed is not None:
        config = replace(config, seed=args.seed)
    return config


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_gen_data(args: argparse.Namespace) -> int:
    config = _load_config(args)
    scenes = generate_synthetic_scenes(args.n, config.gen, config.dynamics,
                                       config.field, config.seed)
    save_scenes(scenes, args.out)
    goals = sum(1 for s in scenes if s.label is Label.GOAL)
    print(f"wrote {len(scenes)} scenes to {args.out} "
          f"(goal fraction {goals / len(scenes):.3f}, seed {config.seed})")
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    config = _load_config(args)
    scenes = load_scenes(args.data, config.field)
    stats = univariate_stats(scenes, config.field)
    relevance = feature_relevance(scenes, config.field)
    header = (f"{'feature':<34} {'mean':>10} {'std':>10} {'median':>10} "
              f"{'p1':>10} {'p99':>10} {'missing':>8} {'auc':>7}")
    lines = [f"{len(scenes)} scenes", header, "-" * len(header)]
    for name, s in stats.per_feature.items():
        lines.append(f"{name:<34} {s.mean:>10.4f} {s.std:>10.4f} {s.median:>10.4f} "
                     f"{s.percentile_1:>10.4f} {s.percentile_99:>10.4f} "
                     f"{s.missing_fraction:>8.3f} {relevance[name]:>7.3f}")
    print("\n".join(lines))
    return 0


def cmd_train(args: argparse.Namespace) -> int:
    config = _load_config(args)
    train_config = config.train
    overrides = {}
    for key in ("learning_rate", "max_epochs", "patience", "hidden_size"):
        value = getattr(args, key)
        if value is not None:
            overrides[key] = value
    if args.seed is not None:
        overrides["seed"] = args.seed
    if overrides:
        train_config = replace(train_config, **overrides)

    scenes = load_scenes(args.data, config.field)
    split = split_dataset(scenes, config.seed)
    balanced = balance_by_replication(split.train, config.seed)
    params, train_report = mlp.train(
        feature_matrix(balanced, config.field), [s.label for s in balanced],
        feature_matrix(split.validation, config.field),
        [s.label for s in split.validation], train_config)
    mlp.save_model(params, args.model_out)
    doc = {
        "epochs_run": train_report.epochs_run,
        "best_epoch": train_report.best_epoch,
        "stop_reason": train_report.stop_reason.value,
        "best_validation_mse": min(train_report.validation_mse_history),
        "train_mse_history": train_report.train_mse_history,
        "validation_mse_history": train_report.validation_mse_history,
    }
    if args.report_out:
        Path(args.report_out).write_text(json.dumps(doc, indent=1), encoding="utf-8")
    print(f"trained on {len(balanced)} scenes (balanced from {len(split.train)}): "
          f"{train_report.epochs_run} epochs, best epoch {train_report.best_epoch}, "
          f"stop {train_report.stop_reason.value}, "
          f"val MSE {min(train_report.validation_mse_history):.5f}; "
          f"model -> {args.model_out}")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    config = _load_config(args)
    params = mlp.load_model(args.model)
    scenes = load_scenes(args.data, config.field)
    if args.use_test_split:
        scenes = list(split_dataset(scenes, config.seed).test)
    scores = mlp.score_batch(params, feature_matrix(scenes, config.field))
    samples = scored_samples(scores, [s.label for s in scenes])
    roc = roc_curve(samples)
    ks = ks2_curve(samples)
    print(f"n={len(samples)} auc={roc.auc:.6f} ks2={ks.ks2:.6f} "
          f"ks2_threshold={ks.ks2_threshold:.6f}")
    if args.roc_out:
        lines = ["fpr,tpr"] + [f"{x!r},{y!r}" for x, y in roc.points]
        Path(args.roc_out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    if args.ks2_out:
        lines = ["threshold,cdf_positive,cdf_negative,gap"]
        for t, cp, cn in zip(ks.thresholds, ks.cdf_positive, ks.cdf_negative):
            lines.append(f"{t!r},{cp!r},{cn!r},{abs(cp - cn)!r}")
        Path(args.ks2_out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return 0


def _make_policy(kind: str, args: argparse.Namespace, config: RunConfig):
    if kind == "mlp":
        if not args.model:
            raise ValueError("--model is required for the mlp policy")
        return MlpPolicy(mlp.load_model(args.model), config.field, config.aim,
                         config.policy)
    if kind == "lda":
        if args.data:
            scenes = load_scenes(args.data, config.field)
        else:
            lda_seed = int(np.random.SeedSequence(
                [config.seed, 3]).generate_state(1)[0])
            scenes = generate_synthetic_scenes(args.lda_train_scenes, config.gen,
                                               config.dynamics, config.field,
                                               lda_seed)
        return LdaPolicy(lda_train(scenes, config.field), config.field,
                         config.aim, config.policy)
    if kind == "center":
        return NaiveCenterPolicy(config.field, config.aim, config.policy)
    raise ValueError(f"unknown policy {kind!r}; use mlp, lda or center")


def cmd_compare(args: argparse.Namespace) -> int:
    config = _load_config(args)
    overrides = {}
    if args.p_goal_threshold is not None:
        overrides["p_goal_threshold"] = args.p_goal_threshold
    if args.score_threshold is not None:
        overrides["score_threshold"] = args.score_threshold
    if overrides:
        config = replace(config, policy=replace(config.policy, **overrides))
    policy_a = _make_policy(args.policy_a, args, config)
    policy_b = _make_policy(args.policy_b, args, config)
    eval_keeper = config.eval_keeper or config.keeper
    log_handle = open(args.episode_log, "w", encoding="utf-8") if args.episode_log else None
    try:
        stats = run_experiment(policy_a, policy_b, args.games, args.shots,
                               eval_keeper, config.gen, config.dynamics,
                               config.field, config.seed,
                               config.gen.defender_catch_radius,
                               episode_log=log_handle)
    finally:
        if log_handle:
            log_handle.close()
    text = report(stats, args.format, names=(policy_a.name, policy_b.name))
    _write_or_print(text, args.out)
    return 0


def cmd_aim_table(args: argparse.Namespace) -> int:
    config = _load_config(args)
    field, aim_config = config.field, config.aim
    distances = np.linspace(args.min_distance, args.max_distance, args.distance_count)
    laterals = np.linspace(-args.y_half, args.y_half, args.y_count)
    targets = discretize_targets(field, aim_config)
    header = "ball_x,ball_y,target_y,p_left,p_right,p_goal"
    if args.mc_rollouts:
        header += ",mc_p_goal"
        rng = np.random.default_rng(config.seed)
    lines = [header]
    for distance in distances:
        for lateral in laterals:
            ball = Vec2(field.goal_line_x - float(distance), float(lateral))
            for target in targets:
                result = p_goal(ShotQuery(ball, target), field, aim_config)
                line = (f"{ball.x!r},{ball.y!r},{target.y!r},{result.p_left!r},"
                        f"{result.p_right!r},{result.p_goal!r}")
                if args.mc_rollouts:
                    goals = 0
                    direction = (target - ball).angle()
                    for _ in range(args.mc_rollouts):
                        state = kick(BallState.at_rest(ball), args.mc_power,
                                     direction, config.dynamics)
                        outcome = rollout_to_goal_line(state, config.dynamics,
                                                       field, rng)
                        if (outcome.crossed
                                and abs(outcome.lateral_at_goal_line) <= field.goal_width / 2):
                            goals += 1
                    line += f",{goals / args.mc_rollouts!r}"
                lines.append(line)
    _write_or_print("\n".join(lines) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="goalshot",
        description="Shot-decision engine and experiment harness for simulated 2D soccer.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="path to an INI config file")
    common.add_argument("--seed", type=int, default=None,
                        help="override the run seed (default 0)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-data", parents=[common],
                       help="generate a synthetic labeled scene CSV")
    p.add_argument("--n", type=int, required=True, help="number of scenes")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_gen_data)

    p = sub.add_parser("stats", parents=[common],
                       help="univariate statistics and per-feature AUC relevance")
    p.add_argument("--data", required=True, help="scene CSV path")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("train", parents=[common],
                       help="split, balance, and train the neural scorer")
    p.add_argument("--data", required=True, help="scene CSV path")
    p.add_argument("--model-out", required=True, help="output model path")
    p.add_argument("--report-out", help="write the training report JSON here")
    p.add_argument("--learning-rate", type=float, default=None)
    p.add_argument("--max-epochs", type=int, default=None)
    p.add_argument("--patience", type=int, default=None)
    p.add_argument("--hidden-size", type=int, default=None)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", parents=[common],
                       help="score a scene file and report ROC/KS2")
    p.add_argument("--model", required=True, help="model file path")
    p.add_argument("--data", required=True, help="scene CSV path")
    p.add_argument("--use-test-split", action="store_true",
                   help="evaluate only the seeded test partition of the file")
    p.add_argument("--roc-out", help="write the ROC curve CSV here")
    p.add_argument("--ks2-out", help="write the KS2 curve CSV here")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("compare", parents=[common],
                       help="paired policy-vs-policy experiment")
    p.add_argument("--model", help="model file for the mlp policy")
    p.add_argument("--data", help="scene CSV used to train the lda policy")
    p.add_argument("--policy-a", default="mlp", help="mlp, lda or center")
    p.add_argument("--policy-b", default="lda", help="mlp, lda or center")
    p.add_argument("--games", type=int, default=100)
    p.add_argument("--shots", type=int, default=10, help="shot episodes per game")
    p.add_argument("--lda-train-scenes", type=int, default=2000,
                   help="synthetic scenes for lda training when --data is absent")
    p.add_argument("--p-goal-threshold", type=float, default=None,
                   help="stage-one goal-probability filter (default 0.70)")
    p.add_argument("--score-threshold", type=float, default=None,
                   help="stage-two score bar for kicking (default 0.5)")
    p.add_argument("--format", default="text", help="text, csv or json")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--episode-log", help="write per-episode JSON lines here")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("aim-table", parents=[common],
                       help="CSV grid of goal-entry probabilities")
    p.add_argument("--min-distance", type=float, default=8.0,
                   help="smallest ball distance from the goal line")
    p.add_argument("--max-distance", type=float, default=28.0)
    p.add_argument("--distance-count", type=int, default=5)
    p.add_argument("--y-half", type=float, default=12.0,
                   help="lateral ball range is [-y-half, +y-half]")
    p.add_argument("--y-count", type=int, default=5)
    p.add_argument("--mc-rollouts", type=int, default=0,
                   help="add a Monte-Carlo column using full ball-dynamics rollouts")
    p.add_argument("--mc-power", type=float, default=100.0,
                   help="kick power for the Monte-Carlo rollouts")
    p.add_argument("--out", help="write the CSV here instead of stdout")
    p.set_defaults(func=cmd_aim_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
