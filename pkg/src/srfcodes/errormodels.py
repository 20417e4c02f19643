"""Samplers for the six error distributions used by the failure bounds.

Pole-free models take a code word matrix and return it with added noise:

* model 1 (exact): given a locator exponent vector, every support column
  gets valuation exactly lambda_j - exps[j];
* model 2 (maximal): valuations are only lower-bounded, so the realized
  locator divides the given maximal one;
* hybrids H1/H2: a fixed error column eps_j on one coprime part of the
  locator, random (exact resp. bounded) columns on the other.

Pole models B1/B2 return received words in the multi-precision setting: a
fixed partial word on the valuation-error positions, random residue noise
around the code word's residues on the evaluation-error positions.

Valuation-exact columns are drawn by rejection on the valuation-defining
coefficient vector (acceptance 1 - q**-l), which keeps the distribution
exactly uniform.  Specs validate eagerly at construction so samplers do no
per-draw checking.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .code import CodeParams, FractionVector, Word
from .field import Rng
from .poles import PoleWord, encode_multiprecision
from .polynomials import (Poly, from_adic, linear_power, padd, pmod,
                          adic_coeffs)


def _exact_column(cp: CodeParams, j: int, mexp: int, rng: Rng) -> list:
    """Residue rows with min valuation at alpha_j exactly mexp (< lambda_j)."""
    p = cp.field.p
    lam = cp.points.lams[j]
    alpha = cp.points.alphas[j]
    ell = cp.ell
    while True:
        lead = [rng.randrange(p) for _ in range(ell)]
        if any(lead):
            break
    col = []
    for i in range(ell):
        coeffs = [0] * mexp + [lead[i]]
        coeffs.extend(rng.randrange(p) for _ in range(lam - mexp - 1))
        col.append(from_adic(alpha, coeffs, p))
    return col


def _bounded_column(cp: CodeParams, j: int, mexp: int, rng: Rng) -> list:
    """Residue rows with valuation at alpha_j at least mexp."""
    p = cp.field.p
    lam = cp.points.lams[j]
    alpha = cp.points.alphas[j]
    col = []
    for _ in range(cp.ell):
        coeffs = [0] * mexp
        coeffs.extend(rng.randrange(p) for _ in range(lam - mexp))
        col.append(from_adic(alpha, coeffs, p))
    return col


def _with_columns(codeword: Word, cp: CodeParams, new_cols: dict) -> Word:
    """Code word plus error columns (columns absent from new_cols shared)."""
    p = cp.field.p
    out = [list(row) for row in codeword]
    for j, col in new_cols.items():
        for i in range(cp.ell):
            if col[i]:
                out[i][j] = padd(out[i][j], col[i], p)
    return out


def sample_E1(lam_exps, codeword: Word, cp: CodeParams, rng: Rng) -> Word:
    """Received word with error locator exactly the given exponent vector."""
    cp.points.check_exponents(lam_exps)
    cols = {}
    for j, a in enumerate(lam_exps):
        if a:
            cols[j] = _exact_column(cp, j, cp.points.lams[j] - a, rng)
    return _with_columns(codeword, cp, cols)


def sample_E2(lamm_exps, codeword: Word, cp: CodeParams, rng: Rng) -> Word:
    """Received word whose error locator divides the given maximal one."""
    cp.points.check_exponents(lamm_exps)
    cols = {}
    for j, a in enumerate(lamm_exps):
        if a:
            cols[j] = _bounded_column(cp, j, cp.points.lams[j] - a, rng)
    return _with_columns(codeword, cp, cols)


@dataclass
class ErrorSpec:
    """Validated description of one error distribution.

    kind: E1, E2, H1, H2, B1 or B2.  ``inner`` is the random locator part
    (the full locator for E-models, the i-part for hybrids, the e-part for
    pole models); ``fixed`` the deterministic part (u resp. v); ``eps`` maps
    fixed positions to frozen error columns (hybrids); ``partial`` maps
    valuation-error positions to frozen (vr, residues) pairs (pole models).
    """

    kind: str
    inner: tuple
    fixed: tuple = ()
    eps: dict = dc_field(default_factory=dict)
    partial: dict = dc_field(default_factory=dict)
    fv: Optional[FractionVector] = None
    codeword: Optional[PoleWord] = None

    @classmethod
    def hybrid(cls, kind: str, cp: CodeParams, inner, fixed, eps: dict):
        if kind not in ("H1", "H2"):
            raise ValueError("hybrid spec kind must be H1 or H2")
        ps = cp.points
        ps.check_exponents(inner)
        ps.check_exponents(fixed)
        inner = tuple(inner)
        fixed = tuple(fixed)
        for j in range(ps.n):
            if inner[j] and fixed[j]:
                raise ValueError("locator parts must have disjoint support")
        want = {j for j, a in enumerate(fixed) if a}
        if set(eps) != want:
            raise ValueError("fixed columns must cover exactly the "
                             "deterministic locator support")
        for j, col in eps.items():
            if len(col) != cp.ell:
                raise ValueError(f"expected {cp.ell} rows in fixed column "
                                 f"{j + 1}")
            target = ps.lams[j] - fixed[j]
            best = min(ps.trunc_val(r, j) for r in col)
            if best != target:
                raise ValueError(
                    f"fixed column {j + 1} has valuation {best}, "
                    f"model requires exactly {target}")
        return cls(kind, inner, fixed,
                   {j: [pmod(r, ps.moduli[j], cp.field.p) for r in col]
                    for j, col in eps.items()})

    @classmethod
    def pole(cls, kind: str, cp: CodeParams, fv: FractionVector,
             exps_e, exps_v, partial: dict):
        if kind not in ("B1", "B2"):
            raise ValueError("pole spec kind must be B1 or B2")
        p = cp.field.p
        ps = cp.points
        ps.check_exponents(exps_e)
        ps.check_exponents(exps_v)
        exps_e = tuple(exps_e)
        exps_v = tuple(exps_v)
        fv.validate(cp)
        if not fv.is_reduced(p):
            raise ValueError("code vector must be reduced")
        codeword = encode_multiprecision(fv, cp)
        for j in range(ps.n):
            if exps_e[j] and exps_v[j]:
                raise ValueError("locator parts must have disjoint support")
        for j, a in enumerate(exps_e):
            if not a:
                continue
            mu = ps.lams[j] - a
            if mu < codeword.vrs[j]:
                raise ValueError(
                    f"evaluation-error valuation {mu} below the pole order "
                    f"at point {j + 1}")
        want = {j for j, a in enumerate(exps_v) if a}
        if set(partial) != want:
            raise ValueError("partial word must cover exactly the "
                             "valuation-error support")
        for j, (vr, col) in partial.items():
            lam = ps.lams[j]
            mu = lam - exps_v[j]
            vg = codeword.vrs[j]
            if mu > vg:
                raise ValueError(
                    f"valuation-error valuation {mu} exceeds the pole order "
                    f"{vg} at point {j + 1}")
            if mu < vg:
                if vr != mu:
                    raise ValueError(
                        f"partial word at point {j + 1} must record "
                        f"valuation {mu}")
            else:
                if not vg < vr <= lam:
                    raise ValueError(
                        f"partial word valuation at point {j + 1} must "
                        f"exceed the pole order {vg}")
            if len(col) != cp.ell:
                raise ValueError(f"expected {cp.ell} rows at point {j + 1}")
            if vr == lam:
                if col != [[1]] * cp.ell:
                    raise ValueError(
                        f"full-pole column at point {j + 1} must be the "
                        f"all-ones vector")
                continue
            for r in col:
                if len(r) > lam - vr:
                    raise ValueError(
                        f"residue at point {j + 1} exceeds its precision")
            if vr > 0:
                if min(ps.trunc_val(r, j) for r in col) != 0:
                    raise ValueError(
                        f"partial word at point {j + 1} is not reduced")
        return cls(kind, exps_e, exps_v, {},
                   {j: (vr, [list(r) for r in col])
                    for j, (vr, col) in partial.items()},
                   fv, codeword)


def sample_H1(spec: ErrorSpec, codeword: Word, cp: CodeParams,
              rng: Rng) -> Word:
    cols = dict(spec.eps)
    for j, a in enumerate(spec.inner):
        if a:
            cols[j] = _exact_column(cp, j, cp.points.lams[j] - a, rng)
    return _with_columns(codeword, cp, cols)


def sample_H2(spec: ErrorSpec, codeword: Word, cp: CodeParams,
              rng: Rng) -> Word:
    cols = dict(spec.eps)
    for j, a in enumerate(spec.inner):
        if a:
            cols[j] = _bounded_column(cp, j, cp.points.lams[j] - a, rng)
    return _with_columns(codeword, cp, cols)


def _pole_received(spec: ErrorSpec, cp: CodeParams, rng: Rng,
                   exact: bool) -> PoleWord:
    p = cp.field.p
    ps = cp.points
    cw = spec.codeword
    vrs = list(cw.vrs)
    cols = [list(col) for col in cw.cols]
    for j, (vr, col) in spec.partial.items():
        vrs[j] = vr
        cols[j] = [list(r) for r in col]
    for j, a in enumerate(spec.inner):
        if not a:
            continue
        lam = ps.lams[j]
        alpha = ps.alphas[j]
        vg = cw.vrs[j]
        mu = lam - a
        m = mu - vg
        prec = lam - vg
        s_adic = [adic_coeffs(r, alpha, prec, p) for r in cols[j]]
        # whenever the noise reaches the leading residue coefficient and the
        # point carries a pole, condition on keeping the pair reduced there
        # (constant adic term of S + u stays nonzero)
        if m == 0 and vg > 0:
            banned = tuple(-row[0] % p for row in s_adic)
        else:
            banned = None
        if exact:
            # valuation exactly m
            while True:
                lead = tuple(rng.randrange(p) for _ in range(cp.ell))
                if any(lead) and lead != banned:
                    break
        elif m == 0:
            # valuation >= 0: zero noise allowed, only the ban applies
            while True:
                lead = tuple(rng.randrange(p) for _ in range(cp.ell))
                if lead != banned:
                    break
        else:
            lead = None
        new_col = []
        for i in range(cp.ell):
            coeffs = list(s_adic[i])
            start = m
            if lead is not None:
                coeffs[m] = (coeffs[m] + lead[i]) % p
                start = m + 1
            for k in range(start, prec):
                coeffs[k] = (coeffs[k] + rng.randrange(p)) % p
            new_col.append(from_adic(alpha, coeffs, p))
        cols[j] = new_col
    return PoleWord(vrs, cols)


def sample_B1(spec: ErrorSpec, fv: FractionVector, cp: CodeParams,
              rng: Rng) -> PoleWord:
    if spec.fv is not fv and spec.fv != fv:
        raise ValueError("spec was built for a different code vector")
    return _pole_received(spec, cp, rng, exact=True)


def sample_B2(spec: ErrorSpec, fv: FractionVector, cp: CodeParams,
              rng: Rng) -> PoleWord:
    if spec.fv is not fv and spec.fv != fv:
        raise ValueError("spec was built for a different code vector")
    return _pole_received(spec, cp, rng, exact=False)


def omega_count(lam_exps, eta_exps, ell: int, q: int) -> int:
    """Number of residue systems mod the locator with content exactly eta.

    Counts l-row residue vectors modulo prod (x - alpha_j)**lam_exps[j]
    whose columnwise gcd with the locator is exactly
    prod (x - alpha_j)**eta_exps[j]:
    q**(l * deg(lam/eta)) * prod_{j: lam_j > eta_j} (1 - q**-l).
    """
    if len(lam_exps) != len(eta_exps):
        raise ValueError("exponent vectors must have equal length")
    out = 1
    ql = q ** ell
    for lam_j, eta_j in zip(lam_exps, eta_exps):
        if not 0 <= eta_j <= lam_j:
            raise ValueError("eta must divide the locator")
        if eta_j < lam_j:
            out *= ql ** (lam_j - eta_j - 1) * (ql - 1)
    return out


def locator_probability_e2(lam_exps, lamm_exps, ell: int, q: int) -> Fraction:
    """P(realized locator = lam) under model 2 with maximal locator lamm."""
    if len(lam_exps) != len(lamm_exps):
        raise ValueError("exponent vectors must have equal length")
    out = Fraction(1)
    ql = Fraction(q) ** ell
    for lam_j, lamm_j in zip(lam_exps, lamm_exps):
        if not 0 <= lam_j <= lamm_j:
            raise ValueError("locator must divide the maximal locator")
        out *= ql ** (lam_j - lamm_j)
        if lam_j:
            out *= 1 - 1 / ql
    return out


def draw_epsilon_columns(cp: CodeParams, fixed_exps, rng: Rng) -> dict:
    """Admissible frozen hybrid columns for the given deterministic part."""
    cp.points.check_exponents(fixed_exps)
    return {j: _exact_column(cp, j, cp.points.lams[j] - a, rng)
            for j, a in enumerate(fixed_exps) if a}


def draw_partial_words(cp: CodeParams, fv: FractionVector, exps_v,
                       rng: Rng) -> dict:
    """Admissible frozen (vr, residues) pairs on the valuation-error support.

    Case split per position: below the pole order the recorded valuation is
    pinned to mu_j and the residues are free; at the pole order the recorded
    valuation is drawn above it and the residues are free.  Both cases emit
    canonical reduced columns.
    """
    p = cp.field.p
    ps = cp.points
    cp.points.check_exponents(exps_v)
    cw = encode_multiprecision(fv, cp)
    out = {}
    for j, a in enumerate(exps_v):
        if not a:
            continue
        lam = ps.lams[j]
        mu = lam - a
        vg = cw.vrs[j]
        if mu > vg:
            raise ValueError(
                f"valuation-error valuation {mu} exceeds the pole order "
                f"{vg} at point {j + 1}")
        if mu < vg:
            vr = mu
        else:
            vr = vg + 1 + rng.randrange(lam - vg)
        if vr == lam:
            out[j] = (vr, [[1] for _ in range(cp.ell)])
            continue
        prec = lam - vr
        alpha = ps.alphas[j]
        if vr > 0:
            while True:
                lead = [rng.randrange(p) for _ in range(cp.ell)]
                if any(lead):
                    break
        else:
            lead = [rng.randrange(p) for _ in range(cp.ell)]
        col = []
        for i in range(cp.ell):
            coeffs = [lead[i]]
            coeffs.extend(rng.randrange(p) for _ in range(prec - 1))
            col.append(from_adic(alpha, coeffs, p))
        out[j] = (vr, col)
    return out
