"""Campaign configs, the binomial gate, and Monte-Carlo replay."""

import math
from fractions import Fraction

import pytest
from scipy.stats import binom

from srfcodes.bounds import bound_thm1, bound_thm2, t_max
from srfcodes.code import encode
from srfcodes.experiments import (CSV_HEADER, MODELS, CampaignConfig,
                                  format_exp_pairs, gate_threshold,
                                  run_campaign)
from srfcodes.field import Rng


def cfg_text(**over):
    base = dict(campaign_id="unit", p=17, alphas="0,1,2,3", lams="2,1,1,1",
                ell=2, d_f=2, d_g=2, model="E1", locator="1:1", t=1,
                trials=30, seed=9)
    base.update(over)
    return "\n".join(f"{k} = {v}" for k, v in base.items() if v is not None)


def h_text(**over):
    base = dict(campaign_id="hy", p=17, alphas="0,1,2,3", lams="2,1,1,1",
                ell=2, d_f=2, d_g=2, model="H1", inner="1:1", t_i=1,
                t_u=0, trials=10, seed=5)
    base.update(over)
    return "\n".join(f"{k} = {v}" for k, v in base.items() if v is not None)


def b_text(**over):
    base = dict(campaign_id="poles", p=5, alphas="0,1,2,3", lams="3,2,2,1",
                ell=1, d_f=2, d_g=3, f="1", g="0 0 1", model="B1",
                errors="2:1", valuation="1:1", t_e=1, t_v=1,
                partial_seed=3, trials=12, seed=21)
    base.update(over)
    return "\n".join(f"{k} = {v}" for k, v in base.items() if v is not None)


def test_config_parse_and_defaults():
    assert MODELS == ("E1", "E2", "H1", "H2", "B1", "B2")
    text = "# comment line\n\n" + cfg_text()
    cfg = CampaignConfig.from_text(text)
    assert cfg.campaign_id == "unit"
    assert cfg.model == "E1"
    assert cfg.exps == (1, 0, 0, 0)
    assert cfg.t == 1 and cfg.t_split == "-"
    assert cfg.trials == 30 and cfg.seed == 9
    # f and g default to the zero vector over denominator 1
    assert cfg.fv.fs == [[], []]
    assert cfg.fv.g == [1]
    assert cfg.center == cfg.fv.canonical(17)
    assert cfg.word == encode(cfg.fv, cfg.cp)
    radius = t_max(2, 5, 2, 2)
    assert cfg.bound.value == bound_thm1(17, 2, 1, radius, (1,)).value
    cfg2 = CampaignConfig.from_text(cfg_text(model="E2"))
    assert cfg2.bound.value == bound_thm2(17, 2, 1, radius, (1,)).value
    # spacing around '=' is free-form
    tight = CampaignConfig.from_text(cfg_text().replace(" = ", "="))
    assert tight.seed == cfg.seed and tight.exps == cfg.exps


def test_config_line_and_key_errors():
    with pytest.raises(ValueError, match="expected 'key = value'"):
        CampaignConfig.from_text(cfg_text() + "\nbogus line")
    with pytest.raises(ValueError, match="duplicate key 'seed'"):
        CampaignConfig.from_text(cfg_text() + "\nseed = 4")
    with pytest.raises(ValueError, match="unknown config key"):
        CampaignConfig.from_text(cfg_text(frobnicate=1))
    with pytest.raises(ValueError, match="unknown config key.*t_i"):
        CampaignConfig.from_text(cfg_text(t_i=3))
    with pytest.raises(ValueError, match="unknown error model"):
        CampaignConfig.from_text(cfg_text(model="E3"))
    with pytest.raises(ValueError, match="trial count"):
        CampaignConfig.from_text(cfg_text(trials=0))
    with pytest.raises(ValueError, match="commas or newlines"):
        CampaignConfig.from_text(cfg_text(campaign_id="a,b"))
    with pytest.raises(ValueError, match="must be coprime"):
        CampaignConfig.from_text(cfg_text(f="0 1;0 2", g="0 1"))
    with pytest.raises(ValueError, match="f must have 2 row"):
        CampaignConfig.from_text(cfg_text(f="1", g="1"))


def test_exponent_pair_parsing():
    with pytest.raises(ValueError, match="not of the form j:e"):
        CampaignConfig.from_text(cfg_text(locator="1"))
    with pytest.raises(ValueError, match="outside 1..4"):
        CampaignConfig.from_text(cfg_text(locator="5:1"))
    with pytest.raises(ValueError, match="must be positive"):
        CampaignConfig.from_text(cfg_text(locator="1:0"))
    with pytest.raises(ValueError, match="listed twice"):
        CampaignConfig.from_text(cfg_text(locator="1:1, 1:1", t=2))
    with pytest.raises(ValueError, match=r"outside \[0, 1\]"):
        CampaignConfig.from_text(cfg_text(locator="2:2", t=2))
    assert format_exp_pairs((0, 2, 0, 1)) == "2:2 4:1"
    assert format_exp_pairs((0, 0)) == "-"


def test_named_hypothesis_errors():
    with pytest.raises(ValueError,
                       match="hypothesis violated: locator degree"):
        CampaignConfig.from_text(cfg_text(locator="1:2", t=1))
    with pytest.raises(ValueError,
                       match="hypothesis violated: distance parameter"):
        CampaignConfig.from_text(cfg_text(t=2))
    with pytest.raises(ValueError, match="hypothesis violated: fixed budget"):
        CampaignConfig.from_text(h_text(t_u=2, t_i=0, inner=""))
    with pytest.raises(ValueError,
                       match="hypothesis violated: fixed locator degree"):
        CampaignConfig.from_text(h_text(fixed="2:1", epsilon_seed=1))
    with pytest.raises(ValueError,
                       match="hypothesis violated: random locator degree"):
        CampaignConfig.from_text(h_text(inner="1:2"))
    with pytest.raises(ValueError, match="hypothesis violated: random budget"):
        CampaignConfig.from_text(h_text(t_i=2))
    with pytest.raises(ValueError,
                       match="hypothesis violated: valuation budget"):
        CampaignConfig.from_text(b_text(t_v=3, t_e=0, errors=""))
    with pytest.raises(ValueError,
                       match="hypothesis violated: valuation locator degree"):
        CampaignConfig.from_text(b_text(valuation="1:2"))
    with pytest.raises(ValueError,
                       match="hypothesis violated: evaluation locator degree"):
        CampaignConfig.from_text(b_text(errors="2:2"))
    with pytest.raises(ValueError,
                       match="hypothesis violated: evaluation budget"):
        CampaignConfig.from_text(b_text(t_e=2))


def test_hybrid_epsilon_sources():
    with pytest.raises(ValueError, match="not both"):
        CampaignConfig.from_text(h_text(fixed="2:1", t_u=1, t_i=0, inner="",
                                        epsilon_seed=1,
                                        **{"epsilon.2": "1 ; 0"}))
    with pytest.raises(ValueError, match="need epsilon_seed"):
        CampaignConfig.from_text(h_text(fixed="2:1", t_u=1, t_i=0, inner=""))
    with pytest.raises(ValueError, match="disjoint support"):
        CampaignConfig.from_text(h_text(lams="2,2,2,1", fixed="1:1", t_u=1,
                                        epsilon_seed=1))
    with pytest.raises(ValueError, match="cover exactly"):
        CampaignConfig.from_text(h_text(fixed="1:1", t_u=1, t_i=0, inner="",
                                        **{"epsilon.2": "1 ; 0"}))
    with pytest.raises(ValueError, match="requires exactly"):
        CampaignConfig.from_text(h_text(fixed="1:1", t_u=1, t_i=0, inner="",
                                        **{"epsilon.1": "1 ; 0"}))
    # explicit column with the right valuation is accepted and replayed
    cfg = CampaignConfig.from_text(h_text(fixed="1:1", t_u=1, t_i=0,
                                          inner="", trials=8,
                                          **{"epsilon.1": "0 1 ; 0"}))
    rep = run_campaign(cfg)
    assert all(r.realized == (1, 0, 0, 0) for r in rep.records)
    assert all(r.success for r in rep.records)


def test_pole_config_sources():
    with pytest.raises(ValueError, match="must specify f and g"):
        CampaignConfig.from_text(b_text(f=None, g=None))
    with pytest.raises(ValueError, match="not both"):
        CampaignConfig.from_text(b_text(**{"received.1": "3 ; 1"}))
    with pytest.raises(ValueError, match="need partial_seed"):
        CampaignConfig.from_text(b_text(partial_seed=None))
    with pytest.raises(ValueError, match="must read"):
        CampaignConfig.from_text(b_text(partial_seed=None,
                                        **{"received.1": "3"}))
    with pytest.raises(ValueError, match="disjoint support"):
        CampaignConfig.from_text(b_text(errors="1:1"))
    with pytest.raises(ValueError, match="must exceed the pole order"):
        CampaignConfig.from_text(b_text(partial_seed=None,
                                        **{"received.1": "2 ; 1"}))
    # explicit below-pole column: valuation 2 error leaves precision x^1
    cfg = CampaignConfig.from_text(b_text(errors="", t_e=0, valuation="1:2",
                                          t_v=2, partial_seed=None, trials=6,
                                          **{"received.1": "1 ; 3 2"}))
    rep = run_campaign(cfg)
    assert all(r.realized == (2, 0, 0, 0) for r in rep.records)
    assert all(r.success for r in rep.records)


def test_gate_threshold_special_cases():
    assert gate_threshold(100, Fraction(0)) == 0
    assert gate_threshold(100, Fraction(-1, 3)) == 0
    # expected count below 1/1000: any failure is damning
    assert gate_threshold(10 ** 6, Fraction(1, 10 ** 10)) == 0
    assert gate_threshold(1, Fraction(1, 1000)) == 1
    assert gate_threshold(1000, Fraction(1, 2000)) == 1
    assert gate_threshold(50, Fraction(1)) == 50
    assert gate_threshold(50, Fraction(7, 3)) == 50


def test_gate_threshold_matches_binomial_quantile():
    cases = [(100, Fraction(1, 10)), (100, Fraction(1, 3)),
             (500, Fraction(1, 100)), (1000, Fraction(1, 7)),
             (5000, Fraction(3, 1000)), (250, Fraction(2, 5))]
    for n, B in cases:
        want = int(binom.ppf(0.99999, n, float(B)))
        assert gate_threshold(n, B) == want
    # definitional minimality in exact arithmetic
    n, B = 60, Fraction(1, 4)
    k = gate_threshold(n, B)
    scale = B.denominator ** n

    def cdf(m):
        return sum(math.comb(n, i) * B.numerator ** i *
                   (B.denominator - B.numerator) ** (n - i)
                   for i in range(m + 1))

    assert 100000 * cdf(k) >= 99999 * scale
    assert 100000 * cdf(k - 1) < 99999 * scale


def test_gate_threshold_frozen_large_campaign():
    assert gate_threshold(100000, Fraction(26, 2525)) == 1169


def test_run_campaign_replay_is_byte_identical(tmp_path):
    text = cfg_text(trials=40)
    rep1 = run_campaign(CampaignConfig.from_text(text))
    rep2 = run_campaign(CampaignConfig.from_text(text))
    assert list(rep1.csv_lines()) == list(rep2.csv_lines())
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    rep1.write_csv(p1)
    rep2.write_csv(p2)
    assert p1.read_bytes() == p2.read_bytes()
    assert rep1.failures == sum(1 for r in rep1.records if not r.success)
    assert rep1.rate == Fraction(rep1.failures, 40)
    assert rep1.threshold == gate_threshold(40, rep1.bound.clamped)
    assert rep1.passed == (rep1.failures <= rep1.threshold)
    assert rep1.verdict in ("PASS", "FAIL")
    assert "campaign unit:" in rep1.summary()
    assert f"gate<={rep1.threshold}" in rep1.summary()


def test_trial_seeds_follow_child_streams():
    rep = run_campaign(CampaignConfig.from_text(cfg_text(trials=5)))
    for i, rec in enumerate(rep.records):
        assert rec.trial == i
        assert rec.seed == Rng(9).child(i).state


def test_seed_override_switches_stream():
    cfg = CampaignConfig.from_text(cfg_text(), seed_override=123)
    assert cfg.seed == 123
    base = CampaignConfig.from_text(cfg_text())
    assert base.seed == 9
    r1 = run_campaign(cfg)
    r2 = run_campaign(base)
    assert [r.seed for r in r1.records] != [r.seed for r in r2.records]


def test_csv_schema_and_fields(tmp_path):
    cfg = CampaignConfig.from_text(cfg_text(trials=12, model="E2"))
    rep = run_campaign(cfg)
    path = tmp_path / "out.csv"
    rep.write_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert lines[0] == ("campaign_id,trial,seed,model,realized_locator,"
                        "outcome,reason,t,t_split,bound_num,bound_den")
    assert len(lines) == 13
    num, den = cfg.bound.value.numerator, cfg.bound.value.denominator
    for i, line in enumerate(lines[1:]):
        cols = line.split(",")
        assert len(cols) == 11
        assert cols[0] == "unit"
        assert int(cols[1]) == i
        assert cols[3] == "E2"
        assert cols[4] == "-" or all(":" in part for part in cols[4].split())
        assert cols[5] in ("success", "failure")
        if cols[5] == "success":
            assert cols[6] == "-"
        assert cols[7] == "1"
        assert cols[8] == "-"
        assert (int(cols[9]), int(cols[10])) == (num, den)


def test_degenerate_random_budget_runs_clean():
    cfg = CampaignConfig.from_text(h_text(fixed="1:1", t_u=1, t_i=0,
                                          inner="", epsilon_seed=7,
                                          trials=15))
    assert cfg.t == 1
    assert cfg.bound.value == Fraction(1, 16)
    rep = run_campaign(cfg)
    assert rep.threshold == 1
    assert all(r.realized == (1, 0, 0, 0) for r in rep.records)
    assert rep.failures == 0 and rep.passed


def test_pole_campaign_realizes_split_locator():
    rep = run_campaign(CampaignConfig.from_text(b_text()))
    # B1 pins both parts: full-pole flip at point 1, exact error at point 2
    assert all(r.realized == (1, 1, 0, 0) for r in rep.records)
    assert rep.failures == 0 and rep.passed
    rep2a = run_campaign(CampaignConfig.from_text(b_text(model="B2")))
    rep2b = run_campaign(CampaignConfig.from_text(b_text(model="B2")))
    assert list(rep2a.csv_lines()) == list(rep2b.csv_lines())
    for r in rep2a.records:
        assert r.realized[0] == 1
        assert r.realized[1] in (0, 1)
        assert r.realized[2:] == (0, 0)
    assert rep2a.failures == 0 and rep2a.passed


def test_worker_pool_replays_serial_stream(monkeypatch):
    text = cfg_text(trials=31)
    serial = run_campaign(CampaignConfig.from_text(text))
    monkeypatch.setenv("SRF_THREADS", "3")
    pooled = run_campaign(CampaignConfig.from_text(text))
    assert list(pooled.csv_lines()) == list(serial.csv_lines())
