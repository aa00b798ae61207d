import math

import numpy as np
import pytest

from conftest import make_scene
from goalshot.metrics import (Ks2Curve, ScoredSample, auc_rank, feature_relevance,
                              ks2_curve, roc_curve, scored_samples)
from goalshot.scenes import Label


def samples_from(pos_scores, neg_scores):
    return ([ScoredSample(float(s), Label.GOAL) for s in pos_scores]
            + [ScoredSample(float(s), Label.NO_GOAL) for s in neg_scores])


def random_tied_samples(rng, n=60):
    # Mix a coarse grid (forcing ties) with continuous draws.
    scores = np.where(rng.random(n) < 0.5,
                      rng.integers(0, 6, n) / 5.0,
                      rng.random(n))
    labels = [Label.GOAL if rng.random() < 0.5 else Label.NO_GOAL for _ in range(n)]
    if not any(l is Label.GOAL for l in labels):
        labels[0] = Label.GOAL
    if not any(l is Label.NO_GOAL for l in labels):
        labels[-1] = Label.NO_GOAL
    return scored_samples(scores, labels)


def brute_force_ks2(samples):
    pos = sorted(s.score for s in samples if s.label is Label.GOAL)
    neg = sorted(s.score for s in samples if s.label is Label.NO_GOAL)
    best, best_t = -1.0, None
    for t in sorted(set(pos + neg)):
        cdf_p = sum(1 for s in pos if s <= t) / len(pos)
        cdf_n = sum(1 for s in neg if s <= t) / len(neg)
        gap = abs(cdf_p - cdf_n)
        if gap > best + 1e-15:
            best, best_t = gap, t
    return best, best_t


class TestRocCurve:
    def test_perfect_separation(self):
        curve = roc_curve(samples_from([0.8, 0.9, 0.7], [0.1, 0.2]))
        assert curve.auc == 1.0
        assert curve.points[0] == (0.0, 0.0)
        assert curve.points[-1] == (1.0, 1.0)

    def test_all_scores_identical(self):
        curve = roc_curve(samples_from([0.5, 0.5], [0.5, 0.5, 0.5]))
        assert math.isclose(curve.auc, 0.5, abs_tol=1e-15)
        assert curve.points == [(0.0, 0.0), (1.0, 1.0)]

    def test_curve_monotone(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            curve = roc_curve(random_tied_samples(rng))
            xs = [p[0] for p in curve.points]
            ys = [p[1] for p in curve.points]
            assert xs[0] == ys[0] == 0.0 and xs[-1] == ys[-1] == 1.0
            assert all(b >= a for a, b in zip(xs, xs[1:]))
            assert all(b >= a for a, b in zip(ys, ys[1:]))

    def test_matches_rank_statistic(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            samples = random_tied_samples(rng)
            assert math.isclose(roc_curve(samples).auc, auc_rank(samples),
                                abs_tol=1e-9)

    def test_single_class_rejected(self):
        with pytest.raises(ValueError):
            roc_curve(samples_from([1.0], []))


class TestAucRank:
    def test_hand_examples(self):
        assert auc_rank(samples_from([2, 3], [1])) == 1.0
        assert auc_rank(samples_from([1], [1])) == 0.5
        assert auc_rank(samples_from([1, 3], [2])) == 0.5

    def test_monotone_transform_invariance(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            samples = random_tied_samples(rng)
            transformed = [ScoredSample(math.exp(3.0 * s.score), s.label)
                           for s in samples]
            assert math.isclose(auc_rank(samples), auc_rank(transformed),
                                abs_tol=1e-12)

    def test_sign_flip_complements(self):
        rng = np.random.default_rng(9)
        samples = random_tied_samples(rng)
        flipped = [ScoredSample(-s.score, s.label) for s in samples]
        assert math.isclose(auc_rank(flipped), 1.0 - auc_rank(samples),
                            abs_tol=1e-12)


class TestKs2Curve:
    def test_identical_multisets_give_zero(self):
        curve = ks2_curve(samples_from([0.1, 0.5, 0.9], [0.9, 0.1, 0.5]))
        assert curve.ks2 == 0.0

    def test_disjoint_supports_give_one(self):
        curve = ks2_curve(samples_from([0.8, 0.9], [0.1, 0.2]))
        assert curve.ks2 == 1.0

    def test_hand_example(self):
        curve = ks2_curve(samples_from([0.2, 0.8], [0.4]))
        assert math.isclose(curve.ks2, 0.5, abs_tol=1e-15)
        assert curve.ks2_threshold == 0.2  # smallest score attaining the max

    def test_matches_brute_force(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            samples = random_tied_samples(rng)
            curve = ks2_curve(samples)
            expected, expected_t = brute_force_ks2(samples)
            assert math.isclose(curve.ks2, expected, abs_tol=1e-12)
            assert math.isclose(curve.ks2_threshold, expected_t, abs_tol=1e-15)

    def test_cdfs_monotone(self):
        rng = np.random.default_rng(13)
        curve = ks2_curve(random_tied_samples(rng))
        assert np.all(np.diff(curve.cdf_positive) >= 0)
        assert np.all(np.diff(curve.cdf_negative) >= 0)
        assert curve.cdf_positive[-1] == curve.cdf_negative[-1] == 1.0

    def test_invariance_and_sign_flip(self):
        rng = np.random.default_rng(15)
        samples = random_tied_samples(rng)
        base = ks2_curve(samples).ks2
        transformed = [ScoredSample(s.score ** 3, s.label) for s in samples]
        assert math.isclose(ks2_curve(transformed).ks2, base, abs_tol=1e-12)
        flipped = [ScoredSample(-s.score, s.label) for s in samples]
        assert math.isclose(ks2_curve(flipped).ks2, base, abs_tol=1e-12)

    def test_single_class_rejected(self):
        with pytest.raises(ValueError):
            ks2_curve(samples_from([], [0.4]))


class TestFeatureRelevance:
    def test_label_aligned_feature_is_perfect(self, field):
        scenes = ([make_scene(kick_power=90.0 + i, label=Label.GOAL) for i in range(8)]
                  + [make_scene(kick_power=10.0 + i, label=Label.NO_GOAL)
                     for i in range(8)])
        relevance = feature_relevance(scenes, field)
        assert relevance["kick_power"] == 1.0

    def test_folding_keeps_both_orientations(self, field):
        # Same scenes with power anti-aligned to the label: folding should
        # still report full relevance.
        scenes = ([make_scene(kick_power=10.0 + i, label=Label.GOAL) for i in range(8)]
                  + [make_scene(kick_power=90.0 + i, label=Label.NO_GOAL)
                     for i in range(8)])
        assert feature_relevance(scenes, field)["kick_power"] == 1.0

    def test_all_features_covered(self, field):
        scenes = [make_scene(kick_power=30.0, label=Label.GOAL),
                  make_scene(kick_power=60.0, label=Label.NO_GOAL)]
        relevance = feature_relevance(scenes, field)
        assert len(relevance) == 22
        assert all(0.5 <= v <= 1.0 for v in relevance.values())
