"""Key equations and minimal-degree decoding for both code settings.

The solution set of the key equations is the F_p[x]-module

    S_R = {(phi, psi_1..psi_l) : psi_i = phi * R_i mod M,
           deg phi < d_g + t, deg psi_i < d_f + t}

with R_i the interpolant of row i of the received word; in the pole setting
the congruence gains the factor W = CRT_M((x - alpha_j)**vr_j) on the psi
side and phi is forced to be divisible by M_inf = prod (x - alpha_j)**vr_j,
giving the reduced system psi_i = phi' * R'_i mod M/M_inf.

The solver looks for a nonzero solution minimizing max(deg phi, deg psi) by
raising a degree cap D = 0, 1, 2, ... and Gaussian-eliminating the resulting
linear system.  Whatever route produced the solution space (implicit psi,
explicit unknowns, reduced or unreduced pole systems), the returned minimizer
is the first row of the reduced row echelon form of the space expressed in
the common (phi, psi_1, ..., psi_l) coefficient string, so all routes agree
exactly.

A successful decode divides out eta = gcd(phi, psi_1, ..., psi_l), checks the
degree bounds, normalizes the denominator monic, and re-encodes the result to
verify it lies within distance t of the received word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .code import CodeParams, FractionVector, Word, distance, encode
from .poles import (PoleWord, canonicalize, encode_multiprecision,
                    pole_distance)
from .polynomials import (Poly, PointSystem, degree, linear_power, normalize,
                          pdiv_exact, pgcd, pmod, pmul, pscale)

FAILURE_REASONS = ("no-nonzero-solution", "gcd-degree-exceeds-t",
                   "numerator-degree", "denominator-degree",
                   "reencode-mismatch")


@dataclass
class DecodeOutcome:
    success: bool
    fraction: Optional[FractionVector]
    reason: Optional[str]
    solution: Optional[tuple]

    @classmethod
    def ok(cls, fv: FractionVector, solution) -> "DecodeOutcome":
        return cls(True, fv, None, solution)

    @classmethod
    def fail(cls, reason: str, solution=None) -> "DecodeOutcome":
        assert reason in FAILURE_REASONS
        return cls(False, None, reason, solution)


def nullspace_basis(rows, ncols: int, p: int):
    """Basis of the right nullspace of the given row list."""
    mat = [row[:] for row in rows if any(row)]
    pivots = []
    r = 0
    nrows = len(mat)
    for c in range(ncols):
        pr = None
        for rr in range(r, nrows):
            if mat[rr][c]:
                pr = rr
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = pow(mat[r][c], -1, p)
        if inv != 1:
            mat[r] = [v * inv % p for v in mat[r]]
        prow = mat[r]
        for rr in range(nrows):
            if rr != r and mat[rr][c]:
                f = mat[rr][c]
                mat[rr] = [(a - f * b) % p for a, b in zip(mat[rr], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    pivset = set(pivots)
    basis = []
    for fc in range(ncols):
        if fc in pivset:
            continue
        v = [0] * ncols
        v[fc] = 1
        for ri, pc in enumerate(pivots):
            if mat[ri][fc]:
                v[pc] = -mat[ri][fc] % p
        basis.append(v)
    return basis


def canonical_vector(basis, p: int):
    """First row of the RREF of the span: a subspace invariant."""
    if not basis:
        return None
    if len(basis) == 1:
        v = basis[0]
        lead = next(c for c in v if c)
        if lead == 1:
            return list(v)
        inv = pow(lead, -1, p)
        return [c * inv % p for c in v]
    mat = [v[:] for v in basis]
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        pr = None
        for rr in range(r, len(mat)):
            if mat[rr][c]:
                pr = rr
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = pow(mat[r][c], -1, p)
        if inv != 1:
            mat[r] = [v * inv % p for v in mat[r]]
        prow = mat[r]
        for rr in range(len(mat)):
            if rr != r and mat[rr][c]:
                f = mat[rr][c]
                mat[rr] = [(a - f * b) % p for a, b in zip(mat[rr], prow)]
        r += 1
        if r == len(mat):
            break
    return mat[0]


def _padded(f: Poly, width: int):
    out = list(f) + [0] * (width - len(f))
    return out[:width]


def _shift_tables(start: Poly, count: int, M: Poly, L: int, p: int):
    """start, x*start, ..., x**(count-1)*start, all reduced mod M (monic)."""
    tables = [_padded(start, L)]
    for _ in range(count - 1):
        prev = tables[-1]
        ov = prev[L - 1]
        if ov:
            cur = [-ov * M[0] % p]
            cur.extend((prev[d - 1] - ov * M[d]) % p for d in range(1, L))
        else:
            cur = [0]
            cur.extend(prev[d - 1] for d in range(1, L))
        tables.append(cur)
    return tables


class KeyEqSystem:
    """Constraint system over the (phi, psi_1..psi_l) coefficient string.

    The unknown layout is cap_phi = d_g + t coefficients of phi followed by
    cap_psi = d_f + t coefficients of each psi_i.  ``solution_basis(D)``
    returns a basis (in that layout) of the solutions additionally capped at
    degree D; ``mode`` selects how the constraints are realized.
    """

    def __init__(self, cp: CodeParams, t: int, mode: str, word):
        ps = cp.points
        if t < 0:
            raise ValueError("decoding radius must be >= 0")
        if cp.d_f + t > ps.L or cp.d_g + t > ps.L:
            raise ValueError(
                "decoding radius too large: need d_f + t <= L and "
                "d_g + t <= L")
        self.cp = cp
        self.t = t
        self.mode = mode
        self.word = word
        self.cap_phi = cp.d_g + t
        self.cap_psi = cp.d_f + t
        self.p = cp.field.p
        self.L = ps.L
        self.width = self.cap_phi + cp.ell * self.cap_psi

    # -- plain (pole-free) systems ----------------------------------------

    @classmethod
    def plain(cls, word: Word, cp: CodeParams, t: int,
              explicit: bool = False) -> "KeyEqSystem":
        if len(word) != cp.ell:
            raise ValueError(f"expected {cp.ell} rows")
        ps = cp.points
        sys = cls(cp, t, "plain-explicit" if explicit else "plain-implicit",
                  word)
        interps = [ps.crt(row) for row in word]
        Mfull = _padded(ps.M, ps.L + 1)
        sys.x_r = [_shift_tables(r, sys.cap_phi, Mfull, ps.L, sys.p)
                   for r in interps]
        sys.interps = interps
        return sys

    # -- pole systems ------------------------------------------------------

    @classmethod
    def pole_reduced(cls, word: PoleWord, cp: CodeParams,
                     t: int) -> "KeyEqSystem":
        word = canonicalize(word, cp)
        ps = cp.points
        p = cp.field.p
        sys = cls(cp, t, "pole-reduced", word)
        m_inf = [1]
        for j, vr in enumerate(word.vrs):
            if vr:
                m_inf = pmul(m_inf, linear_power(ps.alphas[j], vr, p), p)
        sys.m_inf = m_inf
        sys.dinf = degree(m_inf)
        # K = M / M_inf with its own CRT system over the surviving precision
        kept = [(j, ps.lams[j] - word.vrs[j]) for j in range(ps.n)
                if ps.lams[j] - word.vrs[j] > 0]
        sys.kdeg = sum(prec for _, prec in kept)
        if kept:
            kps = PointSystem(cp.field, [ps.alphas[j] for j, _ in kept],
                              [prec for _, prec in kept])
            residues = []
            for i in range(cp.ell):
                local = []
                for (j, prec), mod in zip(kept, kps.moduli):
                    cof = pdiv_exact(m_inf,
                                     linear_power(ps.alphas[j], word.vrs[j],
                                                  p), p)
                    local.append(pmod(pmul(pmod(cof, mod, p),
                                           pmod(word.cols[j][i], mod, p), p),
                                      mod, p))
                residues.append(kps.crt(local))
            sys.kmod = kps.M
            Kfull = _padded(kps.M, sys.kdeg + 1)
            cap_prime = sys.cap_phi - sys.dinf
            sys.x_rp = [_shift_tables(r, max(cap_prime, 1), Kfull,
                                      sys.kdeg, p) if sys.kdeg else []
                        for r in residues]
        else:
            sys.kmod = [1]
            sys.x_rp = [[] for _ in range(cp.ell)]
        return sys

    @classmethod
    def pole_unreduced(cls, word: PoleWord, cp: CodeParams,
                       t: int) -> "KeyEqSystem":
        word = canonicalize(word, cp)
        ps = cp.points
        p = cp.field.p
        sys = cls(cp, t, "pole-unreduced", word)
        shifts = [pmod(linear_power(ps.alphas[j], word.vrs[j], p),
                       ps.moduli[j], p) for j in range(ps.n)]
        w_poly = ps.crt(shifts)
        interps = [ps.crt([word.cols[j][i] for j in range(ps.n)])
                   for i in range(cp.ell)]
        Mfull = _padded(ps.M, ps.L + 1)
        sys.x_w = _shift_tables(w_poly, sys.cap_psi, Mfull, ps.L, p)
        sys.x_r = [_shift_tables(r, sys.cap_phi, Mfull, ps.L, p)
                   for r in interps]
        return sys

    # -- solution spaces ---------------------------------------------------

    def solution_basis(self, D: int):
        """Basis of solutions with max degree <= D, in the string layout."""
        if self.mode == "plain-implicit":
            return self._basis_plain_implicit(D)
        if self.mode == "plain-explicit":
            return self._basis_plain_explicit(D)
        if self.mode == "pole-reduced":
            return self._basis_pole_reduced(D)
        return self._basis_pole_unreduced(D)

    def _basis_plain_implicit(self, D: int):
        p = self.p
        dphi = min(D, self.cap_phi - 1)
        dpsi = min(D, self.cap_psi - 1)
        ncols = dphi + 1
        rows = []
        for tbl in self.x_r:
            for d in range(dpsi + 1, self.L):
                rows.append([tbl[k][d] for k in range(ncols)])
        basis = nullspace_basis(rows, ncols, p)
        out = []
        for v in basis:
            s = _padded(v, self.cap_phi)
            for tbl in self.x_r:
                psi = [0] * self.L
                for k, c in enumerate(v):
                    if c:
                        row = tbl[k]
                        for d in range(self.L):
                            psi[d] += c * row[d]
                s.extend(c % p for c in psi[:self.cap_psi])
            out.append(s)
        return out

    def _basis_plain_explicit(self, D: int):
        p = self.p
        dphi = min(D, self.cap_phi - 1)
        dpsi = min(D, self.cap_psi - 1)
        nphi = dphi + 1
        npsi = dpsi + 1
        ncols = nphi + self.cp.ell * npsi
        rows = []
        for i, tbl in enumerate(self.x_r):
            base = nphi + i * npsi
            for d in range(self.L):
                row = [tbl[k][d] for k in range(nphi)]
                row.extend([0] * (ncols - nphi))
                if d <= dpsi:
                    row[base + d] = p - 1  # -1: psi coefficient subtracted
                rows.append(row)
        basis = nullspace_basis(rows, ncols, p)
        out = []
        for v in basis:
            s = _padded(v[:nphi], self.cap_phi)
            for i in range(self.cp.ell):
                blk = v[nphi + i * npsi: nphi + (i + 1) * npsi]
                s.extend(_padded(blk, self.cap_psi))
            out.append(s)
        return out

    def _basis_pole_reduced(self, D: int):
        p = self.p
        kdeg = self.kdeg
        dphi = min(D, self.cap_phi - 1)
        dpsi = min(D, self.cap_psi - 1)
        dphi_p = dphi - self.dinf
        nphi = dphi_p + 1 if dphi_p >= 0 else 0
        nh = dpsi - kdeg + 1 if dpsi >= kdeg else 0
        ncols = nphi + self.cp.ell * nh
        if ncols == 0:
            return []
        rows = []
        if nphi and dpsi < kdeg - 1:
            for tbl in self.x_rp:
                for d in range(dpsi + 1, kdeg):
                    row = [tbl[m][d] for m in range(nphi)]
                    row.extend([0] * (self.cp.ell * nh))
                    rows.append(row)
        basis = nullspace_basis(rows, ncols, p)
        kcoeffs = self.kmod
        out = []
        for v in basis:
            phi_prime = normalize(v[:nphi])
            phi = pmul(self.m_inf, phi_prime, p)
            s = _padded(phi, self.cap_phi)
            for i in range(self.cp.ell):
                psi_full = [0] * self.cap_psi
                if kdeg and nphi:
                    acc = [0] * kdeg
                    tbl = self.x_rp[i]
                    for m in range(nphi):
                        c = v[m]
                        if c:
                            row = tbl[m]
                            for d in range(kdeg):
                                acc[d] += c * row[d]
                    # constraints zero every coefficient beyond the psi cap
                    for d in range(min(kdeg, self.cap_psi)):
                        psi_full[d] = acc[d] % p
                if nh:
                    h = normalize(v[nphi + i * nh: nphi + (i + 1) * nh])
                    for d, c in enumerate(pmul(h, kcoeffs, p)):
                        psi_full[d] = (psi_full[d] + c) % p
                s.extend(psi_full)
            out.append(s)
        return out

    def _basis_pole_unreduced(self, D: int):
        p = self.p
        dphi = min(D, self.cap_phi - 1)
        dpsi = min(D, self.cap_psi - 1)
        nphi = dphi + 1
        npsi = dpsi + 1
        ncols = nphi + self.cp.ell * npsi
        rows = []
        for i, tbl in enumerate(self.x_r):
            base = nphi + i * npsi
            for d in range(self.L):
                row = [(-tbl[k][d]) % p for k in range(nphi)]
                row.extend([0] * (ncols - nphi))
                for m in range(npsi):
                    row[base + m] = self.x_w[m][d]
                rows.append(row)
        basis = nullspace_basis(rows, ncols, p)
        out = []
        for v in basis:
            s = _padded(v[:nphi], self.cap_phi)
            for i in range(self.cp.ell):
                blk = v[nphi + i * npsi: nphi + (i + 1) * npsi]
                s.extend(_padded(blk, self.cap_psi))
            out.append(s)
        return out

    def unpack(self, string):
        phi = normalize(string[:self.cap_phi])
        psis = []
        for i in range(self.cp.ell):
            lo = self.cap_phi + i * self.cap_psi
            psis.append(normalize(string[lo:lo + self.cap_psi]))
        return phi, psis


def build_key_system(word: Word, cp: CodeParams, t: int,
                     explicit: bool = False) -> KeyEqSystem:
    return KeyEqSystem.plain(word, cp, t, explicit=explicit)


def build_reduced_key_system(word: PoleWord, cp: CodeParams,
                             t: int) -> KeyEqSystem:
    return KeyEqSystem.pole_reduced(word, cp, t)


def build_pole_key_system(word: PoleWord, cp: CodeParams,
                          t: int) -> KeyEqSystem:
    return KeyEqSystem.pole_unreduced(word, cp, t)


def solve_min_degree(sys: KeyEqSystem):
    """Nonzero solution minimizing max(deg phi, deg psi), or None."""
    top = max(sys.cap_phi, sys.cap_psi)
    for D in range(top):
        basis = sys.solution_basis(D)
        if basis:
            v = canonical_vector(basis, sys.p)
            return sys.unpack(v)
    return None


def _finish(sys: KeyEqSystem, sol) -> DecodeOutcome:
    """Shared tail of both algorithms: gcd, degree checks, re-encode."""
    cp = sys.cp
    p = sys.p
    if sol is None:
        return DecodeOutcome.fail("no-nonzero-solution")
    phi, psis = sol
    if not phi:
        # pure-psi solution: no denominator to return
        return DecodeOutcome.fail("denominator-degree", sol)
    eta = phi
    for psi in psis:
        eta = pgcd(eta, psi, p)
        if eta == [1]:
            break
    if degree(eta) > sys.t:
        return DecodeOutcome.fail("gcd-degree-exceeds-t", sol)
    if eta == [1]:
        g_out = phi
        fs_out = psis
    else:
        g_out = pdiv_exact(phi, eta, p)
        fs_out = [pdiv_exact(psi, eta, p) for psi in psis]
    if degree(g_out) >= cp.d_g:
        return DecodeOutcome.fail("denominator-degree", sol)
    if any(degree(f) >= cp.d_f for f in fs_out):
        return DecodeOutcome.fail("numerator-degree", sol)
    lead = g_out[-1]
    if lead != 1:
        s = pow(lead, -1, p)
        g_out = pscale(g_out, s, p)
        fs_out = [pscale(f, s, p) for f in fs_out]
    fv = FractionVector(fs_out, g_out)
    if sys.mode.startswith("plain"):
        try:
            reencoded = encode(fv, cp)
        except ValueError:
            return DecodeOutcome.fail("reencode-mismatch", sol)
        if distance(reencoded, sys.word, cp) > sys.t:
            return DecodeOutcome.fail("reencode-mismatch", sol)
    else:
        reencoded = encode_multiprecision(fv, cp)
        if pole_distance(reencoded, sys.word, cp) > sys.t:
            return DecodeOutcome.fail("reencode-mismatch", sol)
    return DecodeOutcome.ok(fv, sol)


def decode(word: Word, cp: CodeParams, t: int,
           explicit: bool = False) -> DecodeOutcome:
    """Pole-free decoding up to radius t."""
    sys = build_key_system(word, cp, t, explicit=explicit)
    return _finish(sys, solve_min_degree(sys))


def decode_poles(word: PoleWord, cp: CodeParams, t: int,
                 reduced: bool = True) -> DecodeOutcome:
    """Multi-precision decoding up to pole-distance t (word may be raw)."""
    if reduced:
        sys = build_reduced_key_system(word, cp, t)
    else:
        sys = build_pole_key_system(word, cp, t)
    return _finish(sys, solve_min_degree(sys))
