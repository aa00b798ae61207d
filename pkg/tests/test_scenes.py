import math

import numpy as np
import pytest

from conftest import make_scene, random_scene
from goalshot.config import RunConfig
from goalshot.geometry import Vec2
from goalshot.scenes import (CSV_HEADER, FEATURE_NAMES, GeneratorConfig,
                             KickScene, Label, balance_by_replication,
                             extract_features, feature_matrix, filter_defenders,
                             generate_synthetic_scenes, load_scenes, mirror_scene,
                             save_scenes, split_dataset, univariate_stats)

CFG = RunConfig()


class TestExtractFeatures:
    def test_names_and_length(self, field):
        fv = extract_features(make_scene(), field)
        assert len(FEATURE_NAMES) == 22
        assert fv.values.shape == (22,)
        assert np.all(np.isfinite(fv.values))

    def test_keeper_on_shot_line_gives_zero_angle(self, field):
        scene = make_scene(ball=Vec2(30.0, 2.0), target=Vec2(52.5, 2.0),
                           keeper=Vec2(45.0, 2.0))
        fv = extract_features(scene, field)
        idx = FEATURE_NAMES.index("angle_ball_keeper_destiny")
        assert abs(fv.values[idx]) < 1e-12
        idx = FEATURE_NAMES.index("keeper_abs_offset_from_shot_line")
        assert abs(fv.values[idx]) < 1e-12

    def test_vision_angle_ten_meters_out(self, field):
        scene = make_scene(attacker=Vec2(42.5, 0.0))
        fv = extract_features(scene, field)
        idx = FEATURE_NAMES.index("angle_attacker_vision")
        assert math.isclose(fv.values[idx], 2.0 * math.atan(7.01 / 10.0), abs_tol=1e-12)

    def test_no_defenders_uses_sentinels(self, field):
        fv = extract_features(make_scene(defenders=()), field)
        by_name = dict(zip(FEATURE_NAMES, fv.values))
        assert by_name["filtered_defender_count"] == 0.0
        assert by_name["def1_distance_to_ball"] == field.field_length
        assert by_name["def1_abs_offset_from_shot_line"] == field.penalty_area_width
        assert by_name["def3_distance_to_ball"] == field.field_length

    def test_mirror_flips_only_signed_laterals(self, field):
        rng = np.random.default_rng(3)
        signed = {"ball_y", "keeper_y", "target_lateral"}
        for _ in range(50):
            scene = random_scene(rng, field)
            base = extract_features(scene, field).values
            flipped = extract_features(mirror_scene(scene), field).values
            for name, a, b in zip(FEATURE_NAMES, base, flipped):
                if name in signed:
                    assert math.isclose(a, -b, abs_tol=1e-9), name
                else:
                    assert math.isclose(a, b, abs_tol=1e-9), name


class TestFilterDefenders:
    def test_defender_behind_attacker_excluded(self, field):
        scene = make_scene(ball=Vec2(30.0, 0.0), defenders=(Vec2(25.0, 0.0),))
        assert filter_defenders(scene, field) == []

    def test_defender_outside_lateral_band_excluded(self, field):
        scene = make_scene(ball=Vec2(30.0, 0.0),
                           defenders=(Vec2(40.0, field.penalty_area_width / 2 + 0.1),))
        assert filter_defenders(scene, field) == []

    def test_matches_brute_force_on_random_scenes(self, field):
        rng = np.random.default_rng(5)
        for _ in range(200):
            scene = random_scene(rng, field)
            expected = []
            for d in scene.defenders:
                in_front = scene.attacker.x <= d.x <= field.goal_line_x
                in_band = abs(d.y) <= field.penalty_area_width / 2
                if in_front and in_band:
                    expected.append(d)
            expected.sort(key=lambda d: math.hypot(d.x - scene.ball.x,
                                                   d.y - scene.ball.y))
            assert filter_defenders(scene, field) == expected

    def test_subset_and_idempotent(self, field):
        from dataclasses import replace
        rng = np.random.default_rng(7)
        for _ in range(50):
            scene = random_scene(rng, field)
            kept = filter_defenders(scene, field)
            assert all(d in scene.defenders for d in kept)
            refiltered = filter_defenders(replace(scene, defenders=tuple(kept)),
                                          field)
            assert refiltered == kept


class TestCsvRoundTrip:
    def test_round_trip_random_scenes(self, field, tmp_path):
        rng = np.random.default_rng(11)
        scenes = [random_scene(rng, field,
                               label=Label.GOAL if rng.random() < 0.5 else Label.NO_GOAL)
                  for _ in range(100)]
        path = tmp_path / "scenes.csv"
        save_scenes(scenes, path)
        assert load_scenes(path, field) == scenes

    def test_header_only_file(self, field, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text(",".join(CSV_HEADER) + "\n", encoding="utf-8")
        assert load_scenes(path, field) == []

    def test_unlabeled_scene_cannot_be_saved(self, tmp_path):
        with pytest.raises(ValueError, match="label"):
            save_scenes([make_scene(label=None)], tmp_path / "x.csv")

    def test_bad_number_names_line_and_column(self, field, tmp_path):
        scenes = [make_scene(label=Label.GOAL)]
        path = tmp_path / "bad.csv"
        save_scenes(scenes, path)
        text = path.read_text(encoding="utf-8").replace("85.0", "eighty")
        path.write_text(text, encoding="utf-8")
        with pytest.raises(ValueError, match="line 2, column 'kick_power'"):
            load_scenes(path, field)

    def test_bad_label_rejected(self, field, tmp_path):
        path = tmp_path / "bad.csv"
        save_scenes([make_scene(label=Label.GOAL)], path)
        path.write_text(path.read_text(encoding="utf-8").replace("GOAL", "MAYBE"),
                        encoding="utf-8")
        with pytest.raises(ValueError, match="label"):
            load_scenes(path, field)

    def test_out_of_bounds_ball_rejected(self, field, tmp_path):
        path = tmp_path / "oob.csv"
        save_scenes([make_scene(ball=Vec2(32.5, 0.0), label=Label.GOAL)], path)
        path.write_text(path.read_text(encoding="utf-8").replace("32.5", "90.0"),
                        encoding="utf-8")
        with pytest.raises(ValueError, match="bounds"):
            load_scenes(path, field)

    def test_half_defender_rejected(self, field, tmp_path):
        path = tmp_path / "half.csv"
        save_scenes([make_scene(defenders=(Vec2(40.0, 1.0),), label=Label.GOAL)], path)
        lines = path.read_text(encoding="utf-8").splitlines()
        cells = lines[1].split(",")
        cells[CSV_HEADER.index("def1_y")] = ""
        path.write_text(lines[0] + "\n" + ",".join(cells) + "\n", encoding="utf-8")
        with pytest.raises(ValueError, match="def1"):
            load_scenes(path, field)

    def test_wrong_header_rejected(self, field, tmp_path):
        path = tmp_path / "hdr.csv"
        path.write_text("a,b,c\n", encoding="utf-8")
        with pytest.raises(ValueError, match="header"):
            load_scenes(path, field)


class TestSplitDataset:
    def _scenes(self, n):
        return [make_scene(time=i, label=Label.GOAL) for i in range(n)]

    def test_eight_scenes(self):
        split = split_dataset(self._scenes(8), seed=1)
        assert (len(split.train), len(split.validation), len(split.test)) == (4, 2, 2)

    def test_deterministic(self):
        scenes = self._scenes(40)
        assert split_dataset(scenes, seed=5) == split_dataset(scenes, seed=5)

    def test_partition_is_exact(self):
        scenes = self._scenes(101)
        split = split_dataset(scenes, seed=2)
        ids = [s.time for part in (split.train, split.validation, split.test)
               for s in part]
        assert sorted(ids) == list(range(101))

    def test_reference_sizes_for_large_dataset(self):
        scenes = [make_scene(label=Label.GOAL)] * 10691
        split = split_dataset(scenes, seed=0)
        assert (len(split.train), len(split.validation), len(split.test)) == \
            (5346, 2673, 2672)

    def test_too_few_scenes(self):
        with pytest.raises(ValueError):
            split_dataset(self._scenes(3), seed=0)


class TestBalanceByReplication:
    def _mixed(self, n_goal, n_no_goal):
        return ([make_scene(time=i, label=Label.GOAL) for i in range(n_goal)]
                + [make_scene(time=1000 + i, label=Label.NO_GOAL)
                   for i in range(n_no_goal)])

    def _counts(self, scenes):
        goals = sum(1 for s in scenes if s.label is Label.GOAL)
        return goals, len(scenes) - goals

    def test_whole_passes_only(self):
        out = balance_by_replication(self._mixed(100, 300), seed=0)
        assert self._counts(out) == (300, 300)
        times = [s.time for s in out if s.label is Label.GOAL]
        assert all(times.count(t) == 3 for t in set(times))

    def test_already_balanced_is_identity(self):
        scenes = self._mixed(50, 50)
        assert balance_by_replication(scenes, seed=0) == scenes

    def test_partial_pass_samples_without_replacement(self):
        out = balance_by_replication(self._mixed(100, 250), seed=3)
        assert self._counts(out) == (250, 250)
        times = [s.time for s in out if s.label is Label.GOAL]
        copies = [times.count(t) for t in set(times)]
        assert sorted(set(copies)) == [2, 3]
        assert sum(1 for c in copies if c == 3) == 50

    def test_every_output_scene_comes_from_input(self):
        scenes = self._mixed(7, 18)
        out = balance_by_replication(scenes, seed=1)
        assert all(s in scenes for s in out)

    def test_single_class_rejected(self):
        with pytest.raises(ValueError):
            balance_by_replication(self._mixed(10, 0), seed=0)


class TestUnivariateStats:
    def test_known_power_distribution(self, field):
        scenes = [make_scene(kick_power=float(i), label=Label.GOAL)
                  for i in range(1, 101)]
        report = univariate_stats(scenes, field)
        stats = report.per_feature["kick_power"]
        assert math.isclose(stats.mean, 50.5, abs_tol=1e-12)
        assert math.isclose(stats.median, 50.5, abs_tol=1e-12)
        assert math.isclose(stats.percentile_1, 1.99, abs_tol=1e-12)
        assert math.isclose(stats.percentile_99, 99.01, abs_tol=1e-12)
        assert math.isclose(stats.std, math.sqrt((100.0 ** 2 - 1) / 12), rel_tol=1e-12)
        assert stats.missing_fraction == 0.0

    def test_constant_feature(self, field):
        scenes = [make_scene(label=Label.GOAL) for _ in range(10)]
        stats = univariate_stats(scenes, field).per_feature["ball_x"]
        assert stats.std == 0.0
        assert stats.percentile_1 == stats.median == stats.percentile_99

    def test_percentile_ordering(self, field):
        rng = np.random.default_rng(13)
        scenes = [random_scene(rng, field, label=Label.GOAL) for _ in range(60)]
        for stats in univariate_stats(scenes, field).per_feature.values():
            assert stats.percentile_1 <= stats.median <= stats.percentile_99

    def test_empty_rejected(self, field):
        with pytest.raises(ValueError):
            univariate_stats([], field)


class TestGenerator:
    def test_zero_count_rejected(self):
        with pytest.raises(ValueError):
            generate_synthetic_scenes(0, CFG.gen, CFG.dynamics, CFG.field, seed=0)

    def test_degenerate_region_rejected(self):
        with pytest.raises(ValueError):
            GeneratorConfig(x_min=40.0, x_max=30.0)
        with pytest.raises(ValueError):
            generate_synthetic_scenes(
                5, GeneratorConfig(x_min=50.0, x_max=60.0), CFG.dynamics,
                CFG.field, seed=0)

    def test_deterministic_per_seed(self):
        a = generate_synthetic_scenes(40, CFG.gen, CFG.dynamics, CFG.field, seed=9)
        b = generate_synthetic_scenes(40, CFG.gen, CFG.dynamics, CFG.field, seed=9)
        assert a == b

    def test_scene_validity(self, field):
        scenes = generate_synthetic_scenes(200, CFG.gen, CFG.dynamics, field, seed=4)
        for s in scenes:
            assert field.contains(s.ball)
            assert s.label in (Label.GOAL, Label.NO_GOAL)
            assert len(s.defenders) <= CFG.gen.max_defenders
            assert abs(s.target.y) <= field.goal_width / 2 - CFG.gen.target_margin

    def test_class_mix_in_band(self, field):
        scenes = generate_synthetic_scenes(4000, CFG.gen, CFG.dynamics, field, seed=21)
        frac = sum(1 for s in scenes if s.label is Label.GOAL) / len(scenes)
        assert 0.3 <= frac <= 0.7


class TestKickSceneValidation:
    def test_too_many_defenders(self):
        with pytest.raises(ValueError):
            make_scene(defenders=tuple(Vec2(40.0, i) for i in range(11)))

    def test_bad_power(self):
        with pytest.raises(ValueError):
            make_scene(kick_power=-2.0)

    def test_feature_matrix_shape(self, field):
        scenes = [make_scene(), make_scene(kick_power=50.0)]
        assert feature_matrix(scenes, field).shape == (2, 22)
