"""Config-driven Monte-Carlo campaigns that pit the decoders against their
failure-probability bounds.

A campaign plants one codeword, draws independent errors from a chosen model,
decodes every received word, and compares the empirical failure count with
the matching exact bound through a one-sided binomial gate.  Campaigns are
described by flat ``key = value`` text files so runs diff cleanly and replay
byte for byte.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bounds import (BoundValue, bound_thm1, bound_thm1_hybrid,
                     bound_thm1_poles, bound_thm2, bound_thm2_hybrid,
                     bound_thm2_poles, t_bar_e, t_bar_i, t_max)
from .code import (CodeParams, FractionVector, encode, error_locator)
from .decoder import decode, decode_poles
from .errormodels import (ErrorSpec, draw_epsilon_columns, draw_partial_words,
                          sample_B1, sample_B2, sample_E1, sample_E2,
                          sample_H1, sample_H2)
from .field import PrimeField, Rng
from .poles import pole_error_matrix
from .polynomials import PointSystem, poly_from_text

__all__ = [
    "MODELS",
    "CSV_HEADER",
    "CampaignConfig",
    "TrialRecord",
    "CampaignReport",
    "run_campaign",
    "gate_threshold",
]

MODELS = ("E1", "E2", "H1", "H2", "B1", "B2")

CSV_HEADER = ("campaign_id,trial,seed,model,realized_locator,outcome,reason,"
              "t,t_split,bound_num,bound_den")

_E_KEYS = {"locator", "t"}
_H_KEYS = {"inner", "fixed", "t_i", "t_u", "epsilon_seed"}
_B_KEYS = {"errors", "valuation", "t_e", "t_v", "partial_seed"}
_BASE_KEYS = {"campaign_id", "p", "alphas", "lams", "ell", "d_f", "d_g",
              "f", "g", "model", "trials", "seed"}


def _hyp(msg: str) -> ValueError:
    return ValueError(f"hypothesis violated: {msg}")


def _parse_exp_pairs(value: str, n: int) -> tuple:
    """Comma-separated ``j:e`` pairs with 1-based point indices."""
    exps = [0] * n
    value = value.strip()
    if not value:
        return tuple(exps)
    for item in value.split(","):
        item = item.strip()
        if ":" not in item:
            raise ValueError(f"exponent entry {item!r} is not of the form j:e")
        js, es = item.split(":", 1)
        j, e = int(js), int(es)
        if not 1 <= j <= n:
            raise ValueError(f"point index {j} outside 1..{n}")
        if e < 1:
            raise ValueError(f"exponent {e} at point {j} must be positive")
        if exps[j - 1]:
            raise ValueError(f"point {j} listed twice")
        exps[j - 1] = e
    return tuple(exps)


def format_exp_pairs(exps) -> str:
    pairs = [f"{j + 1}:{e}" for j, e in enumerate(exps) if e]
    return " ".join(pairs) if pairs else "-"


def _parse_poly_rows(value: str, p: int, expect: int, what: str) -> list:
    rows = [poly_from_text(part, p) for part in value.split(";")]
    if len(rows) != expect:
        raise ValueError(f"{what} must have {expect} row(s), got {len(rows)}")
    return rows


@dataclass
class TrialRecord:
    trial: int
    seed: int
    realized: tuple
    success: bool
    reason: Optional[str]


class CampaignConfig:
    """Parsed and validated description of one Monte-Carlo campaign."""

    def __init__(self, raw: dict):
        self.campaign_id = raw.get("campaign_id", "campaign")
        if any(c in self.campaign_id for c in ",\n\r"):
            raise ValueError("campaign_id must not contain commas or newlines")
        self.model = raw["model"].strip()
        if self.model not in MODELS:
            raise ValueError(f"unknown error model {self.model!r}; "
                             f"expected one of {', '.join(MODELS)}")
        p = int(raw["p"])
        field = PrimeField(p)
        alphas = [int(s) % p for s in raw["alphas"].split(",")]
        lams = [int(s) for s in raw["lams"].split(",")]
        points = PointSystem(field, alphas, lams)
        self.ell = int(raw["ell"])
        self.d_f = int(raw["d_f"])
        self.d_g = int(raw["d_g"])
        self.cp = CodeParams(field, points, self.d_f, self.d_g, self.ell)
        self.trials = int(raw["trials"])
        if self.trials < 1:
            raise ValueError("trial count must be positive")
        self.seed = int(raw["seed"])

        if self.model in ("B1", "B2") and ("f" not in raw or "g" not in raw):
            raise ValueError("pole campaigns must specify f and g explicitly")
        fs = (_parse_poly_rows(raw["f"], p, self.ell, "f")
              if "f" in raw else [[] for _ in range(self.ell)])
        g = poly_from_text(raw["g"], p) if "g" in raw else [1]
        self.fv = FractionVector(fs, g)
        self.fv.validate(self.cp)
        if not self.fv.is_reduced(p):
            raise ValueError("f and g must be coprime")
        self.center = self.fv.canonical(p)

        extra = set(raw) - _BASE_KEYS
        if self.model in ("E1", "E2"):
            self._init_plain(raw, extra)
        elif self.model in ("H1", "H2"):
            self._init_hybrid(raw, extra)
        else:
            self._init_pole(raw, extra)
        if extra:
            raise ValueError(f"unknown config key(s): {', '.join(sorted(extra))}")

        L = points.L
        if self.d_f + self.t > L or self.d_g + self.t > L:
            raise _hyp("key-equation degree caps need d_f + t and "
                       "d_g + t at most L")

    # -- model-specific sections -------------------------------------------

    def _init_plain(self, raw: dict, extra: set):
        extra -= _E_KEYS
        ps = self.cp.points
        self.exps = _parse_exp_pairs(raw.get("locator", ""), ps.n)
        ps.check_exponents(self.exps)
        self.t = int(raw["t"])
        self.t_split = "-"
        if sum(self.exps) > self.t:
            raise _hyp("locator degree exceeds the distance parameter t")
        radius = t_max(self.ell, ps.L, self.d_f, self.d_g)
        if self.t > radius:
            raise _hyp(f"distance parameter {self.t} exceeds the decoding "
                       f"radius {radius}")
        locator = tuple(e for e in self.exps if e)
        q, ell = self.cp.field.p, self.ell
        if self.model == "E1":
            self.bound = bound_thm1(q, ell, self.t, radius, locator)
        else:
            self.bound = bound_thm2(q, ell, self.t, radius, locator)
        self.word = encode(self.fv, self.cp)

    def _init_hybrid(self, raw: dict, extra: set):
        ps = self.cp.points
        inner = _parse_exp_pairs(raw.get("inner", ""), ps.n)
        fixed = _parse_exp_pairs(raw.get("fixed", ""), ps.n)
        self.t_i = int(raw["t_i"])
        self.t_u = int(raw["t_u"])
        self.t = self.t_i + self.t_u
        self.t_split = f"tu={self.t_u} ti={self.t_i}"
        gap = self.cp.gap
        if 2 * self.t_u > gap:
            raise _hyp("fixed budget t_u exceeds half the design gap")
        if sum(fixed) > self.t_u:
            raise _hyp("fixed locator degree exceeds t_u")
        if sum(inner) > self.t_i:
            raise _hyp("random locator degree exceeds t_i")
        radius = t_bar_i(self.ell, ps.L, self.d_f, self.d_g, self.t_u)
        if self.t_i > radius:
            raise _hyp(f"random budget {self.t_i} exceeds the split "
                       f"radius {radius}")
        eps_keys = {k for k in extra if k.startswith("epsilon.")}
        extra -= _H_KEYS | eps_keys
        if eps_keys and "epsilon_seed" in raw:
            raise ValueError("specify either epsilon_seed or explicit "
                             "epsilon columns, not both")
        if eps_keys:
            eps = {}
            for key in eps_keys:
                j = int(key.split(".", 1)[1]) - 1
                eps[j] = _parse_poly_rows(raw[key], self.cp.field.p,
                                          self.ell, key)
        elif any(fixed):
            if "epsilon_seed" not in raw:
                raise ValueError("fixed errors need epsilon_seed or "
                                 "explicit epsilon columns")
            eps = draw_epsilon_columns(self.cp, fixed,
                                       Rng(int(raw["epsilon_seed"])))
        else:
            eps = {}
        self.spec = ErrorSpec.hybrid(self.model, self.cp, inner, fixed, eps)
        locator = tuple(e for e in inner if e)
        q, ell = self.cp.field.p, self.ell
        if self.model == "H1":
            self.bound = bound_thm1_hybrid(q, ell, self.t_i, radius, locator)
        else:
            self.bound = bound_thm2_hybrid(q, ell, self.t_i, radius, locator)
        self.word = encode(self.fv, self.cp)

    def _init_pole(self, raw: dict, extra: set):
        ps = self.cp.points
        exps_e = _parse_exp_pairs(raw.get("errors", ""), ps.n)
        exps_v = _parse_exp_pairs(raw.get("valuation", ""), ps.n)
        self.t_e = int(raw["t_e"])
        self.t_v = int(raw["t_v"])
        self.t = self.t_e + self.t_v
        self.t_split = f"tv={self.t_v} te={self.t_e}"
        gap = self.cp.gap
        if 2 * self.t_v > gap:
            raise _hyp("valuation budget t_v exceeds half the design gap")
        if sum(exps_v) > self.t_v:
            raise _hyp("valuation locator degree exceeds t_v")
        if sum(exps_e) > self.t_e:
            raise _hyp("evaluation locator degree exceeds t_e")
        radius = t_bar_e(self.ell, ps.L, self.d_f, self.d_g, self.t_v)
        if self.t_e > radius:
            raise _hyp(f"evaluation budget {self.t_e} exceeds the split "
                       f"radius {radius}")
        rec_keys = {k for k in extra if k.startswith("received.")}
        extra -= _B_KEYS | rec_keys
        if rec_keys and "partial_seed" in raw:
            raise ValueError("specify either partial_seed or explicit "
                             "received columns, not both")
        if rec_keys:
            partial = {}
            for key in rec_keys:
                j = int(key.split(".", 1)[1]) - 1
                parts = raw[key].split(";")
                if len(parts) != self.ell + 1:
                    raise ValueError(f"{key} must read 'vr ; r_1 ; ... ; "
                                     f"r_{self.ell}'")
                vr = int(parts[0])
                col = [poly_from_text(s, self.cp.field.p) for s in parts[1:]]
                partial[j] = (vr, col)
        elif any(exps_v):
            if "partial_seed" not in raw:
                raise ValueError("valuation errors need partial_seed or "
                                 "explicit received columns")
            partial = draw_partial_words(self.cp, self.fv, exps_v,
                                         Rng(int(raw["partial_seed"])))
        else:
            partial = {}
        self.spec = ErrorSpec.pole(self.model, self.cp, self.fv,
                                   exps_e, exps_v, partial)
        locator = tuple(e for e in exps_e if e)
        q, ell = self.cp.field.p, self.ell
        if self.model == "B1":
            self.bound = bound_thm1_poles(q, ell, self.t_e, radius, locator)
        else:
            self.bound = bound_thm2_poles(q, ell, self.t_e, radius, locator)
        self.codeword = self.spec.codeword

    # -- construction ------------------------------------------------------

    @classmethod
    def from_text(cls, text: str, seed_override: Optional[int] = None
                  ) -> "CampaignConfig":
        raw = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"line {lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            key = key.strip()
            if key in raw:
                raise ValueError(f"line {lineno}: duplicate key {key!r}")
            raw[key] = value.strip()
        if seed_override is not None:
            raw["seed"] = str(seed_override)
        return cls(raw)

    @classmethod
    def from_file(cls, path, seed_override: Optional[int] = None
                  ) -> "CampaignConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(fh.read(), seed_override)


def run_trial(cfg: CampaignConfig, index: int) -> TrialRecord:
    rng = Rng(cfg.seed).child(index)
    seed = rng.state
    cp = cfg.cp
    model = cfg.model
    if model == "E1":
        received = sample_E1(cfg.exps, cfg.word, cp, rng)
    elif model == "E2":
        received = sample_E2(cfg.exps, cfg.word, cp, rng)
    elif model == "H1":
        received = sample_H1(cfg.spec, cfg.word, cp, rng)
    elif model == "H2":
        received = sample_H2(cfg.spec, cfg.word, cp, rng)
    elif model == "B1":
        received = sample_B1(cfg.spec, cfg.fv, cp, rng)
    else:
        received = sample_B2(cfg.spec, cfg.fv, cp, rng)

    if model in ("B1", "B2"):
        realized = pole_error_matrix(received, cfg.codeword, cp)[1]
        out = decode_poles(received, cp, cfg.t)
    else:
        realized = error_locator(received, cfg.word, cp)
        out = decode(received, cp, cfg.t)

    if out.success:
        if out.fraction == cfg.center:
            return TrialRecord(index, seed, realized, True, None)
        return TrialRecord(index, seed, realized, False, "wrong-codeword")
    return TrialRecord(index, seed, realized, False, out.reason)


def _run_slice(cfg: CampaignConfig, start: int, stop: int) -> list:
    return [run_trial(cfg, i) for i in range(start, stop)]


def gate_threshold(trials: int, bound: Fraction) -> int:
    """Largest failure count the one-sided binomial test tolerates.

    The threshold is the 0.99999 quantile of Bin(trials, min(bound, 1)),
    computed in exact integer arithmetic over the common denominator.  Tiny
    expected counts get a hard cap: zero failures when trials*bound <
    10^-3, at most one when trials*bound < 1.
    """
    B = bound if bound < 1 else Fraction(1)
    if B <= 0:
        return 0
    mean = B * trials
    if mean < 1:
        return 0 if mean < Fraction(1, 1000) else 1
    if B == 1:
        return trials
    num, den = B.numerator, B.denominator
    comp = den - num
    term = comp ** trials
    cum = term
    target = 99999 * den ** trials
    k = 0
    while 100000 * cum < target:
        term = term * (trials - k) * num // ((k + 1) * comp)
        cum += term
        k += 1
    return k


@dataclass
class CampaignReport:
    config: CampaignConfig
    records: list
    failures: int
    rate: Fraction
    bound: BoundValue
    threshold: int
    passed: bool

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def csv_lines(self):
        cfg = self.config
        num = self.bound.value.numerator
        den = self.bound.value.denominator
        yield CSV_HEADER
        for r in self.records:
            outcome = "success" if r.success else "failure"
            reason = r.reason if r.reason else "-"
            yield (f"{cfg.campaign_id},{r.trial},{r.seed},{cfg.model},"
                   f"{format_exp_pairs(r.realized)},{outcome},{reason},"
                   f"{cfg.t},{cfg.t_split},{num},{den}")

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            for line in self.csv_lines():
                fh.write(line + "\n")

    def summary(self) -> str:
        cfg = self.config
        return (f"campaign {cfg.campaign_id}: model={cfg.model} "
                f"trials={cfg.trials} failures={self.failures} "
                f"rate={self.rate.numerator}/{self.rate.denominator} "
                f"bound={self.bound} gate<={self.threshold} {self.verdict}")


def run_campaign(cfg: CampaignConfig) -> CampaignReport:
    threads = max(1, int(os.environ.get("SRF_THREADS", "1")))
    n = cfg.trials
    if threads == 1 or n < 2 * threads:
        records = [run_trial(cfg, i) for i in range(n)]
    else:
        step = -(-n // threads)
        spans = [(s, min(s + step, n)) for s in range(0, n, step)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_run_slice, cfg, a, b) for a, b in spans]
            records = [r for fut in futures for r in fut.result()]
    failures = sum(1 for r in records if not r.success)
    rate = Fraction(failures, n)
    threshold = gate_threshold(n, cfg.bound.clamped)
    return CampaignReport(cfg, records, failures, rate, cfg.bound,
                          threshold, failures <= threshold)
