"""Multi-precision evaluation of fraction vectors with poles at the points.

When the denominator may vanish at evaluation points, a word stores per point
j a valuation vr_j in [0, lambda_j] together with residues
r_{1,j}, ..., r_{l,j} mod (x - alpha_j)**(lambda_j - vr_j); the pair encodes
the column (x - alpha_j)**(-vr_j) * r_j.  Two pairs (vr, r) and (vr', r')
denote the same column when

    (x - a)**vr' * r == (x - a)**vr * r'   mod (x - a)**lambda.

A pair is reduced when gcd over the rows of (r_j, (x - alpha_j)**vr_j) is 1.
The encoder maps f/g to vr_j = val_{alpha_j}(g) and
r_j = f * (g / (x - alpha_j)**vr_j)^{-1}; by convention the residue column is
all ones when vr_j = lambda_j (zero-precision residues carry no information).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .code import CodeParams, FractionVector, enumerate_codebook
from .polynomials import (Poly, degree, linear_power, normalize, pinv_mod,
                          pmod, pmul, poly_from_text, poly_to_text, pscale,
                          psub, synth_div, valuation)


@dataclass
class PoleWord:
    """Per-point valuations and residue rows (cols[j][i] = row i, point j)."""

    vrs: list
    cols: list

    def column(self, j: int):
        return self.cols[j]

    def __eq__(self, other) -> bool:
        return (isinstance(other, PoleWord) and self.vrs == other.vrs
                and self.cols == other.cols)


def _validate_shape(w: PoleWord, cp: CodeParams) -> None:
    ps = cp.points
    if len(w.vrs) != ps.n or len(w.cols) != ps.n:
        raise ValueError("word must carry one column per point")
    for j, (vr, col) in enumerate(zip(w.vrs, w.cols)):
        if not 0 <= vr <= ps.lams[j]:
            raise ValueError(f"valuation {vr} outside [0, lambda] at point "
                             f"{j + 1}")
        if len(col) != cp.ell:
            raise ValueError(f"expected {cp.ell} residues at point {j + 1}")


def reduce_representative(w: PoleWord, cp: CodeParams) -> PoleWord:
    """Divide out gcd(r_j, (x - alpha_j)**vr_j) at every point; idempotent."""
    _validate_shape(w, cp)
    p = cp.field.p
    ps = cp.points
    vrs = []
    cols = []
    for j in range(ps.n):
        vr = w.vrs[j]
        col = [normalize(r) for r in w.cols[j]]
        if vr > 0:
            drop = vr
            for r in col:
                if r:
                    v = valuation(r, ps.alphas[j], p)
                    if v < drop:
                        drop = v
                    if drop == 0:
                        break
            if drop:
                alpha = ps.alphas[j]
                new_col = []
                for r in col:
                    for _ in range(drop):
                        r, rem = synth_div(r, alpha, p)
                        assert rem == 0
                    new_col.append(r)
                col = new_col
                vr -= drop
        vrs.append(vr)
        cols.append(col)
    return PoleWord(vrs, cols)


def canonicalize(w: PoleWord, cp: CodeParams) -> PoleWord:
    """Unique representative: reduced, residues truncated to their precision.

    Residue rows are reduced mod (x - alpha_j)**(lambda_j - vr_j); at
    vr_j = lambda_j the column is the all-ones vector (full-pole convention).
    """
    red = reduce_representative(w, cp)
    p = cp.field.p
    ps = cp.points
    for j in range(ps.n):
        lam = ps.lams[j]
        vr = red.vrs[j]
        if vr == lam:
            red.cols[j] = [[1] for _ in range(cp.ell)]
        elif vr > 0:
            mod = linear_power(ps.alphas[j], lam - vr, p)
            red.cols[j] = [pmod(r, mod, p) for r in red.cols[j]]
        else:
            red.cols[j] = [pmod(r, ps.moduli[j], p) for r in red.cols[j]]
    return red


def encode_multiprecision(fv: FractionVector, cp: CodeParams) -> PoleWord:
    """Evaluate f/g at every point, recording pole orders of g."""
    fv.validate(cp)
    p = cp.field.p
    if not fv.is_reduced(p):
        raise ValueError("fraction vector is not reduced")
    ps = cp.points
    vrs = []
    cols = []
    for j in range(ps.n):
        alpha = ps.alphas[j]
        lam = ps.lams[j]
        v = valuation(fv.g, alpha, p)
        if v >= lam:
            vrs.append(lam)
            cols.append([[1] for _ in range(cp.ell)])
            continue
        shifted = fv.g
        for _ in range(v):
            shifted, rem = synth_div(shifted, alpha, p)
            assert rem == 0
        mod = linear_power(alpha, lam - v, p)
        ginv = pinv_mod(pmod(shifted, mod, p), mod, p)
        vrs.append(v)
        cols.append([pmod(pmul(pmod(f, mod, p), ginv, p), mod, p)
                     for f in fv.fs])
    return PoleWord(vrs, cols)


def pole_error_matrix(w1: PoleWord, w2: PoleWord, cp: CodeParams):
    """Error columns e_j and the locator/valuation exponent vectors.

    e_j = (x - a_j)**vr1_j * r2_j - (x - a_j)**vr2_j * r1_j mod m_j; the
    locator exponent at j is lambda_j - min_i val(e_{i,j}) (0 when the
    column vanishes, i.e. when the words agree at j).
    """
    _validate_shape(w1, cp)
    _validate_shape(w2, cp)
    p = cp.field.p
    ps = cp.points
    columns = []
    lam_exps = []
    mu_exps = []
    for j in range(ps.n):
        mod = ps.moduli[j]
        shift1 = linear_power(ps.alphas[j], w1.vrs[j], p)
        shift2 = linear_power(ps.alphas[j], w2.vrs[j], p)
        col = []
        mu = ps.lams[j]
        for i in range(cp.ell):
            e = psub(pmod(pmul(shift1, w2.cols[j][i], p), mod, p),
                     pmod(pmul(shift2, w1.cols[j][i], p), mod, p), p)
            col.append(e)
            if e:
                v = ps.trunc_val(e, j)
                if v < mu:
                    mu = v
        columns.append(col)
        mu_exps.append(mu)
        lam_exps.append(ps.lams[j] - mu)
    return columns, tuple(lam_exps), tuple(mu_exps)


def pole_distance(w1: PoleWord, w2: PoleWord, cp: CodeParams) -> int:
    _, lam_exps, _ = pole_error_matrix(w1, w2, cp)
    return sum(lam_exps)


def words_equivalent(w1: PoleWord, w2: PoleWord, cp: CodeParams) -> bool:
    return pole_distance(w1, w2, cp) == 0


@dataclass(frozen=True)
class SupportPartition:
    """Error positions split by kind relative to a reference codeword."""

    valuation: frozenset
    evaluation: frozenset


def partition_error_support(received: PoleWord, codeword: PoleWord,
                            cp: CodeParams) -> SupportPartition:
    """Split the error support of a reduced received word.

    Valuation errors are positions where the recorded pole orders differ;
    evaluation errors share the pole order but differ in the residues mod
    (x - alpha_j)**(lambda_j - vr_j).
    """
    p = cp.field.p
    ps = cp.points
    val_idx = set()
    eval_idx = set()
    for j in range(ps.n):
        if received.vrs[j] != codeword.vrs[j]:
            val_idx.add(j)
            continue
        prec = ps.lams[j] - received.vrs[j]
        if prec == 0:
            continue
        mod = linear_power(ps.alphas[j], prec, p)
        for i in range(cp.ell):
            if pmod(psub(received.cols[j][i], codeword.cols[j][i], p),
                    mod, p):
                eval_idx.add(j)
                break
    return SupportPartition(frozenset(val_idx), frozenset(eval_idx))


def denominator_error_column(received: PoleWord, fv: FractionVector,
                             cp: CodeParams, j: int):
    """The denominator-cleared error (x-a)**vr_j * f - g * r_j mod m_j."""
    p = cp.field.p
    ps = cp.points
    mod = ps.moduli[j]
    shift = linear_power(ps.alphas[j], received.vrs[j], p)
    return [psub(pmod(pmul(shift, f, p), mod, p),
                 pmod(pmul(fv.g, received.cols[j][i], p), mod, p), p)
            for i, f in enumerate(fv.fs)]


def pole_word_to_text(w: PoleWord, cp: CodeParams) -> str:
    """One line per point: "vr_j ; r_1 ; ... ; r_l"."""
    lines = []
    for j in range(cp.points.n):
        parts = [str(w.vrs[j])]
        parts.extend(poly_to_text(r) for r in w.cols[j])
        lines.append(" ; ".join(parts))
    return "\n".join(lines) + "\n"


def pole_word_from_text(text: str, cp: CodeParams) -> PoleWord:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    ps = cp.points
    if len(lines) != ps.n:
        raise ValueError(f"expected {ps.n} point lines, got {len(lines)}")
    p = cp.field.p
    vrs = []
    cols = []
    for j, line in enumerate(lines):
        parts = line.split(";")
        if len(parts) != cp.ell + 1:
            raise ValueError(
                f"expected valuation plus {cp.ell} residues on line {j + 1}")
        try:
            vr = int(parts[0])
        except ValueError as exc:
            raise ValueError(f"bad valuation on line {j + 1}") from exc
        if not 0 <= vr <= ps.lams[j]:
            raise ValueError(f"valuation out of range on line {j + 1}")
        col = [poly_from_text(part, p) for part in parts[1:]]
        for r in col:
            if degree(r) >= ps.lams[j]:
                raise ValueError(f"residue degree too large on line {j + 1}")
        vrs.append(vr)
        cols.append(col)
    return canonicalize(PoleWord(vrs, cols), cp)


@dataclass(frozen=True)
class SubsetSumWitness:
    """Multiplicity split certifying the tight minimum-distance instance."""

    s0: tuple
    s_inf: tuple
    eta: int
    gamma: int
    delta0: int
    delta_inf: int


def check_subset_sum_constraint(cp: CodeParams):
    """First witness (lexicographic) of the tightness constraint, or None.

    Searches assignments of each point to S_0, S_inf, or neither such that
    d_f - 1 = delta_0 + sum_{S_0} lambda_j with 0 <= delta_0 < lambda_eta and
    d_g - 1 = delta_inf + sum_{S_inf} lambda_j with 0 <= delta_inf <
    lambda_gamma, for indexes eta, gamma outside S_0 and S_inf that must
    differ when both deltas are positive.  Assignment vectors are explored in
    lexicographic order over digits (0 = unused, 1 = S_0, 2 = S_inf).
    """
    ps = cp.points
    n = ps.n
    if n > 18:
        raise ValueError("subset-sum search capped at 18 points")
    lams = ps.lams
    need0 = cp.d_f - 1
    need_inf = cp.d_g - 1
    digits = [0] * n

    def walk(j: int, sum0: int, sum_inf: int):
        if sum0 > need0 or sum_inf > need_inf:
            return None
        if j == n:
            delta0 = need0 - sum0
            delta_inf = need_inf - sum_inf
            free = [k for k in range(n) if digits[k] == 0]
            for eta in free:
                if delta0 >= lams[eta]:
                    continue
                for gamma in free:
                    if delta_inf >= lams[gamma]:
                        continue
                    if delta0 > 0 and delta_inf > 0 and eta == gamma:
                        continue
                    return SubsetSumWitness(
                        tuple(k for k in range(n) if digits[k] == 1),
                        tuple(k for k in range(n) if digits[k] == 2),
                        eta, gamma, delta0, delta_inf)
            return None
        for d in (0, 1, 2):
            digits[j] = d
            add0 = lams[j] if d == 1 else 0
            add_inf = lams[j] if d == 2 else 0
            found = walk(j + 1, sum0 + add0, sum_inf + add_inf)
            if found is not None:
                return found
        digits[j] = 0
        return None

    return walk(0, 0, 0)


def tight_pair_from_witness(witness: SubsetSumWitness, cp: CodeParams,
                            beta: int = 2):
    """Two codewords at distance exactly L - d_f - d_g + 2.

    f_1 = (x - a_eta)**delta0 * prod_{S_0} m_j, g = (x - a_gamma)**delta_inf
    * prod_{S_inf} m_j, and the second vector is beta * f_1 / g for any
    beta outside {0, 1}.
    """
    p = cp.field.p
    ps = cp.points
    if beta % p in (0, 1):
        raise ValueError("beta must differ from 0 and 1")
    f1 = linear_power(ps.alphas[witness.eta], witness.delta0, p)
    for j in witness.s0:
        f1 = pmul(f1, ps.moduli[j], p)
    g = linear_power(ps.alphas[witness.gamma], witness.delta_inf, p)
    for j in witness.s_inf:
        g = pmul(g, ps.moduli[j], p)
    fv1 = FractionVector([list(f1) for _ in range(cp.ell)], g)
    fv2 = FractionVector([pscale(f1, beta, p) for _ in range(cp.ell)], g)
    return fv1, fv2


def min_distance_bruteforce_poles(cp: CodeParams) -> int:
    """Exact minimum distance of the pole-admitting code by enumeration."""
    fvs = enumerate_codebook(cp, with_poles=True)
    if len(fvs) < 2:
        raise ValueError("fewer than two codewords")
    words = [encode_multiprecision(fv, cp) for fv in fvs]
    best = None
    for a in range(len(words)):
        wa = words[a]
        for b in range(a + 1, len(words)):
            d = pole_distance(wa, words[b], cp)
            if best is None or d < best:
                best = d
    return best
