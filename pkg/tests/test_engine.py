"""Trial loop: configuration, determinism, outcomes, record accounting."""

import numpy as np
import pytest

import evolab.engine as engine
from evolab.boolfn import (
    MAJORITY,
    MONOTONE_CONJUNCTION,
    PARITY,
    initial_hypothesis,
    sample_target,
)
from evolab.engine import (
    OUTCOME_FAILURE,
    OUTCOME_SUCCESS,
    OUTCOME_TERMINATED,
    TrialConfig,
    TrialResult,
    config_from_dict,
    config_to_dict,
    evolvable_verdict,
    records_to_jsonl,
    result_from_dict,
    result_to_dict,
    result_to_json,
    run_trial,
)
from evolab.errors import ConfigError
from evolab.sampling import parse_dist


def cfg(**kw):
    base = dict(cls=MONOTONE_CONJUNCTION, n=5, seed=1)
    base.update(kw)
    return TrialConfig(**base)


class TestConfigValidation:
    def test_accepts_paper_defaults(self):
        c = cfg()
        c.validate()
        assert (c.samples, c.validation_size, c.tolerance, c.epsilon, c.max_generations) == (
            1000, 5000, 0.01, 0.05, 500,
        )

    @pytest.mark.parametrize(
        "kw",
        [
            {"cls": "bogus"},
            {"n": 0},
            {"regime": "greedy"},
            {"samples": 0},
            {"validation_size": 0},
            {"epsilon": 0.0},
            {"epsilon": 1.0},
            {"tolerance": 0.0},
            {"max_generations": 0},
            {"init_mode": "warp"},
            {"support_law": "bogus"},
            {"cls": MAJORITY, "init_mode": "fixed_empty"},
        ],
    )
    def test_rejects_invalid(self, kw):
        with pytest.raises(ConfigError):
            run_trial(cfg(**kw))

    def test_smart_init_forces_mode(self):
        assert cfg(regime="smart_init").resolved_init() == ("fixed_empty", 10)
        assert cfg(cls=MAJORITY, n=20, regime="smart_init").resolved_init() == ("fixed_subset", 10)
        # subset clamps to n when the dimension is smaller than 10
        assert cfg(cls=MAJORITY, n=5, regime="smart_init").resolved_init() == ("fixed_subset", 5)
        with pytest.raises(ConfigError):
            cfg(regime="smart_init", init_mode="random").resolved_init()

    def test_standard_defaults_to_random(self):
        assert cfg().resolved_init() == ("random", 10)
        assert cfg(regime="no_neutral").resolved_init() == ("random", 10)
        assert cfg(init_mode="near_target").resolved_init() == ("near_target", 10)


class TestDeterminism:
    def test_identical_config_identical_serialization(self):
        a = run_trial(cfg(n=10, seed=77))
        b = run_trial(cfg(n=10, seed=77))
        assert result_to_json(a) == result_to_json(b)
        assert records_to_jsonl(a) == records_to_jsonl(b)

    def test_different_seeds_differ(self):
        a = run_trial(cfg(n=10, seed=1))
        b = run_trial(cfg(n=10, seed=2))
        assert result_to_json(a) != result_to_json(b)

    def test_roundtrip_through_dicts(self):
        res = run_trial(cfg(n=8, seed=5))
        assert result_to_dict(result_from_dict(result_to_dict(res))) == result_to_dict(res)
        c = cfg(dist=parse_dist("beta:a=2,b=5,t=0.5"), regime="no_neutral")
        assert config_from_dict(config_to_dict(c)) == c


class TestOutcomes:
    def test_initial_match_succeeds_within_one_generation(self):
        # search a seed whose random start equals the sampled target
        found = None
        for seed in range(5000):
            rng = np.random.default_rng(seed)
            f = sample_target(MONOTONE_CONJUNCTION, 5, rng)
            r = initial_hypothesis(MONOTONE_CONJUNCTION, 5, "random", rng)
            if np.array_equal(f.include, r.include):
                found = seed
                break
        assert found is not None, "no matching seed in range"
        res = run_trial(cfg(seed=found))
        assert res.outcome == OUTCOME_SUCCESS
        assert res.generations_used <= 1

    @pytest.mark.parametrize("seed", [3, 11, 29])
    def test_monotone_conjunction_n20_is_trivial(self, seed):
        res = run_trial(cfg(n=20, seed=seed))
        assert res.outcome == OUTCOME_SUCCESS
        assert res.generations_used <= 5

    def test_parity_n20_fails_flat(self):
        res = run_trial(cfg(cls=PARITY, n=20, seed=7))
        assert res.outcome == OUTCOME_FAILURE
        assert res.generations_used == 500
        assert max(abs(r.val_perf) for r in res.records) < 0.3

    def test_near_target_init_converges_fast(self):
        # one literal edit away from a wide conjunction: first step succeeds
        res = run_trial(cfg(n=30, init_mode="near_target", seed=4))
        assert res.outcome == OUTCOME_SUCCESS
        assert res.generations_used <= 2
        res = run_trial(cfg(cls=MAJORITY, n=30, init_mode="near_target", seed=4))
        assert res.outcome == OUTCOME_SUCCESS

    def test_no_neutral_majority_terminates_or_succeeds(self):
        res = run_trial(cfg(cls=MAJORITY, n=30, regime="no_neutral", seed=0))
        assert res.outcome in (OUTCOME_TERMINATED, OUTCOME_SUCCESS)
        if res.outcome == OUTCOME_TERMINATED:
            assert res.records[-1].kind == "terminated"
            assert res.records[-1].train_perf == res.records[-1].base_perf

    def test_validation_redraw_mode_runs(self):
        res = run_trial(cfg(n=10, seed=3, validation_redraw=True))
        assert res.outcome == OUTCOME_SUCCESS


@pytest.fixture(scope="module")
def runs():
    out = []
    for seed in range(6):
        out.append(run_trial(cfg(cls=MAJORITY, n=10, regime="no_neutral", seed=seed)))
        out.append(run_trial(cfg(cls=PARITY, n=10, seed=seed)))
    return out


class TestRecordInvariants:
    def test_records_match_generations_used(self, runs):
        for res in runs:
            assert len(res.records) == res.generations_used
            assert res.generations_used <= res.config.max_generations
            assert res.final_validation_perf == res.records[-1].val_perf
            for rec in res.records:
                assert -1.0 <= rec.train_perf <= 1.0
                assert -1.0 <= rec.val_perf <= 1.0
                assert rec.bene >= 0 and rec.neut >= 0

    def test_success_record_clears_threshold(self, runs):
        for res in runs:
            if res.outcome == OUTCOME_SUCCESS:
                assert res.records[-1].val_perf > 1 - res.config.epsilon

    def test_no_neutral_accepted_steps_gain_tolerance(self, runs):
        # every accepted step beats the same-batch base by >= t
        for res in runs:
            if res.config.regime != "no_neutral":
                continue
            for rec in res.records:
                if rec.kind == "beneficial":
                    assert rec.train_perf >= rec.base_perf + res.config.tolerance

    def test_neutral_allowed_never_terminates(self, runs):
        for res in runs:
            if res.config.regime == "no_neutral":
                continue
            assert all(rec.kind != "terminated" for rec in res.records)
            assert res.outcome != OUTCOME_TERMINATED

    def test_terminated_only_final_record(self, runs):
        for res in runs:
            for rec in res.records[:-1]:
                assert rec.kind != "terminated"


class TestSharedBatch:
    def test_one_training_batch_per_generation(self, monkeypatch):
        calls = []
        orig = engine.sample_batch

        def counting(d, n, s, rng):
            calls.append(s)
            return orig(d, n, s, rng)

        monkeypatch.setattr(engine, "sample_batch", counting)
        res = run_trial(cfg(n=10, seed=13))
        train_calls = [s for s in calls if s == 1000]
        val_calls = [s for s in calls if s == 5000]
        assert len(train_calls) == res.generations_used
        assert len(val_calls) == 1  # fixed validation batch drawn once


class TestEvolvableVerdict:
    def fake(self, outcome):
        return TrialResult(config=cfg(), outcome=outcome, generations_used=1,
                           final_validation_perf=0.0)

    def test_three_of_five(self):
        results = [self.fake(OUTCOME_SUCCESS)] * 3 + [self.fake(OUTCOME_FAILURE)] * 2
        assert evolvable_verdict(results) is True

    def test_zero_of_five(self):
        assert evolvable_verdict([self.fake(OUTCOME_FAILURE)] * 5) is False

    def test_sixty_percent_rule(self):
        results = [self.fake(OUTCOME_SUCCESS)] * 18 + [self.fake(OUTCOME_FAILURE)] * 12
        assert evolvable_verdict(results) is True
        results = [self.fake(OUTCOME_SUCCESS)] * 17 + [self.fake(OUTCOME_FAILURE)] * 13
        assert evolvable_verdict(results) is False

    def test_length_mismatch_rejected(self):
        with pytest.raises(ConfigError):
            evolvable_verdict([self.fake(OUTCOME_SUCCESS)], trials=5)

    def test_explicit_bar(self):
        results = [self.fake(OUTCOME_SUCCESS)] * 2 + [self.fake(OUTCOME_FAILURE)] * 3
        assert evolvable_verdict(results, min_successes=2) is True
