import json

import pytest

from contactcones.invariants import HypothesisViolation
from contactcones.sampler import (
    CampaignConfig,
    _summarize,
    child_seed,
    multiplicity_check,
    random_hypersurface,
    sample_point_on_X,
    verify_connecting_lemma,
    verify_dimension_theorem,
    verify_multiplicity_lemma,
    verify_projection_degree,
)

Q = 10007


class TestChildSeed:
    def test_deterministic(self):
        assert child_seed(42, 3, "F") == child_seed(42, 3, "F")

    def test_distinguishes_every_input(self):
        seen = {child_seed(42, 3, "F"), child_seed(42, 3, "G"),
                child_seed(42, 4, "F"), child_seed(43, 3, "F")}
        assert len(seen) == 4


class TestCampaignConfig:
    def test_from_mapping_h_range(self):
        cfg = CampaignConfig.from_mapping(
            {"n": 3, "d": 8, "h_range": (2, 4), "trials": 5, "master_seed": 1})
        assert cfg.h_range == (2, 4)

    def test_from_mapping_h_lo_hi_strings(self):
        cfg = CampaignConfig.from_mapping(
            {"n": "3", "d": "8", "h_lo": "2", "h_hi": "4", "trials": "5"})
        assert (cfg.n, cfg.d, cfg.h_range) == (3, 8, (2, 4))

    def test_validate_rejects_bad_h(self):
        cfg = CampaignConfig(n=3, d=8, h_range=(5, 2))
        with pytest.raises(ValueError):
            cfg.validate()

    def test_validate_rejects_small_char(self):
        cfg = CampaignConfig(n=2, d=8, modulus=7, h_range=(2, 2))
        with pytest.raises(ValueError):
            cfg.validate()

    def test_echo_round_trip(self):
        cfg = CampaignConfig(n=2, d=5, h_range=(2, 3), trials=7, master_seed=9)
        assert CampaignConfig.from_mapping(cfg.echo()) == cfg


class TestRandomHypersurface:
    def test_shape_and_determinism(self):
        X = random_hypersurface(3, 6, Q, seed=12)
        Y = random_hypersurface(3, 6, Q, seed=12)
        Z = random_hypersurface(3, 6, Q, seed=13)
        assert X.F == Y.F
        assert X.F != Z.F
        assert X.F.is_homogeneous() and X.F.degree() == 6
        assert X.nvars == 5

    def test_point_sampling(self):
        X = random_hypersurface(2, 5, Q, seed=8)
        s = sample_point_on_X(X, seed=0)
        assert s.on_X and s.smooth_at
        assert X.contains(s.point)
        t = sample_point_on_X(X, seed=0)
        assert tuple(s.point) == tuple(t.point)


class TestSummarize:
    def test_counts_and_invariant(self):
        records = [
            {"status": "pass", "red_flag": False},
            {"status": "resampled-pass", "red_flag": False},
            {"status": "cap", "red_flag": False},
            {"status": "fail", "red_flag": True},
            {"status": "pass", "red_flag": False},
        ]
        s = _summarize(records)
        assert s["trials"] == 5
        assert s["passes"] == 2  # resampled passes sit in their own bucket
        assert s["fails"] == 1
        assert s["resamples"] == 1
        assert s["capped"] == 1
        assert s["passes"] + s["fails"] + s["resamples"] + s["capped"] == \
            s["trials"]
        assert s["red_flags"] == 1
        assert s["all_pass"] is False


class TestDimensionCampaign:
    def test_small_campaign_passes(self):
        cfg = CampaignConfig(n=2, d=4, h_range=(2, 3), trials=4, master_seed=5)
        report = verify_dimension_theorem(cfg)
        assert report.summary["all_pass"]
        assert report.summary["resamples"] == 0
        assert len(report.results) == 4
        for rec in report.results:
            for check in rec["checks"]:
                assert check["computed"] == check["expected"]

    def test_json_determinism(self):
        cfg = CampaignConfig(n=2, d=4, h_range=(2, 2), trials=3, master_seed=1)
        a = verify_dimension_theorem(cfg).to_json()
        b = verify_dimension_theorem(cfg).to_json()
        assert a == b
        doc = json.loads(a)
        assert set(doc) == {"config", "results", "summary", "version"}
        assert "elapsed" not in a

    def test_workers_do_not_change_payload(self):
        cfg = CampaignConfig(n=2, d=4, h_range=(2, 2), trials=4, master_seed=2)
        a = verify_dimension_theorem(cfg, workers=1).to_json()
        b = verify_dimension_theorem(cfg, workers=2).to_json()
        assert a == b

    def test_text_summary_carries_timing(self):
        cfg = CampaignConfig(n=2, d=4, h_range=(2, 2), trials=2, master_seed=3)
        text = verify_dimension_theorem(cfg).text_summary()
        assert "elapsed" in text and "all_pass" in text


class TestMultiplicity:
    def test_generic_point(self):
        X = random_hypersurface(2, 5, Q, seed=21)
        s = sample_point_on_X(X, seed=1)
        out = multiplicity_check(X, s.point)
        assert out["multiplicity"] == 2
        assert out["flag"] is False

    def test_deep_fixture_flagged(self, deep_quintic):
        out = multiplicity_check(deep_quintic, (1, 0, 0, 0))
        assert out["multiplicity"] == 3
        assert out["flag"] is True

    def test_infinite_fixture_flagged(self, ruled_quartic):
        out = multiplicity_check(ruled_quartic, (1, 0, 0, 0))
        assert out["multiplicity"] == "INFINITE"
        assert out["flag"] is True

    def test_campaign(self):
        cfg = CampaignConfig(n=2, d=5, h_range=(2, 2), trials=5, master_seed=11)
        report = verify_multiplicity_lemma(cfg)
        assert report.summary["all_pass"]


class TestConnectingCampaign:
    def test_small_field_campaign(self):
        cfg = CampaignConfig(n=2, d=6, modulus=11, h_range=(2, 2),
                             trials=3, master_seed=7)
        report = verify_connecting_lemma(cfg)
        assert report.summary["fails"] == 0
        assert "witness_rate_pct" in report.summary
        for rec in report.results:
            assert rec["dim_lower"] >= rec["dim_expected"]

    def test_h_must_stay_in_halved_range(self):
        cfg = CampaignConfig(n=2, d=6, modulus=11, h_range=(3, 3),
                             trials=1, master_seed=0)
        with pytest.raises(HypothesisViolation):
            verify_connecting_lemma(cfg)

    def test_requires_single_h(self):
        cfg = CampaignConfig(n=4, d=10, modulus=101, h_range=(2, 3),
                             trials=1, master_seed=0)
        with pytest.raises(ValueError):
            verify_connecting_lemma(cfg)


class TestProjectionDegree:
    def test_quintic_surface(self):
        X = random_hypersurface(2, 5, Q, seed=11)
        s = sample_point_on_X(X, seed=5)
        assert verify_projection_degree(X, s.point, 3) == 2

    def test_sextic_surface(self):
        X = random_hypersurface(2, 6, Q, seed=2)
        s = sample_point_on_X(X, seed=1)
        assert verify_projection_degree(X, s.point, 3) == 3

    def test_octic_threefold(self):
        X = random_hypersurface(3, 8, Q, seed=4)
        s = sample_point_on_X(X, seed=1)
        assert verify_projection_degree(X, s.point, 4) == 4

    def test_gate_h_equals_n_plus_one(self):
        X = random_hypersurface(2, 5, Q, seed=11)
        s = sample_point_on_X(X, seed=5)
        with pytest.raises(ValueError, match="curve cones"):
            verify_projection_degree(X, s.point, 2)

    def test_gate_cone_must_be_curve(self, deep_quintic):
        with pytest.raises(ValueError, match="not a curve"):
            verify_projection_degree(deep_quintic, (1, 0, 0, 0), 3)
