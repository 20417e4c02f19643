"""Simultaneous rational function codes without poles at the points.

A code word for the vector f/g = (f_1/g, ..., f_l/g) is the l x n matrix
whose (i, j) entry is f_i * g^{-1} mod (x - alpha_j)**lambda_j.  Degrees are
bounded by deg f_i < d_f, deg g < d_g, the vector is reduced
(gcd(f_1, ..., f_l, g) = 1), and here g must not vanish at any point.

Words are plain nested lists ``word[i][j]`` of residue polynomials; the
distance between two words is the degree of the error locator
prod_j (x - alpha_j)**(lambda_j - mu_j) with mu_j the smallest truncated
valuation over the rows of the column difference.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .field import PrimeField
from .polynomials import (Poly, PointSystem, degree, monic, normalize, padd,
                          pdiv_exact, pgcd, pinv_mod, pmod, pmul, poly_from_text,
                          poly_to_text, pscale, psub)

Word = list  # list[list[Poly]], rows indexed by function, columns by point

BRUTE_FORCE_LIMIT = 10 ** 7


@dataclass(frozen=True)
class CodeParams:
    """Code parameters: field, evaluation points, degree bounds, row count."""

    field: PrimeField
    points: PointSystem
    d_f: int
    d_g: int
    ell: int

    def __post_init__(self):
        if self.points.field != self.field:
            raise ValueError("point system belongs to a different field")
        if self.d_f < 1 or self.d_g < 1:
            raise ValueError("degree bounds must be >= 1")
        if self.ell < 1:
            raise ValueError("need at least one function row")
        if self.d_f + self.d_g > self.points.L + 1:
            raise ValueError(
                f"d_f + d_g = {self.d_f + self.d_g} exceeds L + 1 = "
                f"{self.points.L + 1}")

    @property
    def gap(self) -> int:
        """L - d_f - d_g + 1: the decoding budget (min distance exceeds it)."""
        return self.points.L - self.d_f - self.d_g + 1


@dataclass
class FractionVector:
    """Numerators f_1..f_l over a common denominator g (g != 0)."""

    fs: list
    g: Poly

    def __post_init__(self):
        self.fs = [normalize(f) for f in self.fs]
        self.g = normalize(self.g)
        if not self.g:
            raise ValueError("denominator must be nonzero")

    def validate(self, cp: CodeParams) -> None:
        if len(self.fs) != cp.ell:
            raise ValueError(f"expected {cp.ell} numerators")
        for f in self.fs:
            if degree(f) >= cp.d_f:
                raise ValueError(f"numerator degree {degree(f)} >= d_f")
        if degree(self.g) >= cp.d_g:
            raise ValueError(f"denominator degree {degree(self.g)} >= d_g")

    def content(self, p: int) -> Poly:
        """Monic gcd of all numerators and the denominator."""
        g = self.g
        for f in self.fs:
            g = pgcd(g, f, p)
            if g == [1]:
                break
        return g

    def is_reduced(self, p: int) -> bool:
        return self.content(p) == [1]

    def reduced(self, p: int) -> "FractionVector":
        c = self.content(p)
        if c == [1]:
            return FractionVector([list(f) for f in self.fs], list(self.g))
        return FractionVector([pdiv_exact(f, c, p) for f in self.fs],
                              pdiv_exact(self.g, c, p))

    def canonical(self, p: int) -> "FractionVector":
        """Reduced form with monic denominator."""
        out = self.reduced(p)
        lead = out.g[-1]
        if lead != 1:
            s = pow(lead, -1, p)
            out = FractionVector([pscale(f, s, p) for f in out.fs],
                                 pscale(out.g, s, p))
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, FractionVector)
                and self.fs == other.fs and self.g == other.g)


def encode(fv: FractionVector, cp: CodeParams) -> Word:
    """Evaluate f/g at every point with multiplicity (g must avoid poles)."""
    fv.validate(cp)
    if not fv.is_reduced(cp.field.p):
        raise ValueError("fraction vector is not reduced")
    p = cp.field.p
    ps = cp.points
    word: Word = [[None] * ps.n for _ in range(cp.ell)]
    for j, mod in enumerate(ps.moduli):
        try:
            ginv = pinv_mod(fv.g, mod, p)
        except ValueError:
            raise ValueError(
                "denominator vanishes at an evaluation point; "
                "use the multi-precision pole encoder") from None
        for i, f in enumerate(fv.fs):
            word[i][j] = pmod(pmul(pmod(f, mod, p), ginv, p), mod, p)
    return word


def column_valuation(w1: Word, w2: Word, cp: CodeParams, j: int) -> int:
    """Smallest truncated valuation over rows of column j of w1 - w2."""
    ps = cp.points
    p = cp.field.p
    best = ps.lams[j]
    for i in range(cp.ell):
        diff = psub(w1[i][j], w2[i][j], p)
        if diff:
            v = ps.trunc_val(diff, j)
            if v < best:
                best = v
                if best == 0:
                    break
    return best


def error_locator(w1: Word, w2: Word, cp: CodeParams) -> tuple:
    """Exponent vector of the error locator of w1 relative to w2."""
    return tuple(cp.points.lams[j] - column_valuation(w1, w2, cp, j)
                 for j in range(cp.points.n))


def distance(w1: Word, w2: Word, cp: CodeParams) -> int:
    """Degree of the error locator between two words."""
    return sum(error_locator(w1, w2, cp))


def add_error(word: Word, err: Word, cp: CodeParams) -> Word:
    p = cp.field.p
    return [[padd(word[i][j], err[i][j], p) for j in range(cp.points.n)]
            for i in range(cp.ell)]


def word_to_text(word: Word, cp: CodeParams) -> str:
    """One line per point: row residues separated by " ; "."""
    lines = []
    for j in range(cp.points.n):
        lines.append(" ; ".join(poly_to_text(word[i][j])
                                for i in range(cp.ell)))
    return "\n".join(lines) + "\n"


def word_from_text(text: str, cp: CodeParams) -> Word:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    ps = cp.points
    if len(lines) != ps.n:
        raise ValueError(f"expected {ps.n} point lines, got {len(lines)}")
    word: Word = [[None] * ps.n for _ in range(cp.ell)]
    p = cp.field.p
    for j, line in enumerate(lines):
        parts = line.split(";")
        if len(parts) != cp.ell:
            raise ValueError(f"expected {cp.ell} residues on line {j + 1}")
        for i, part in enumerate(parts):
            res = poly_from_text(part, p)
            if degree(res) >= ps.lams[j]:
                raise ValueError(
                    f"residue degree too large for point {j + 1}")
            word[i][j] = res
    return word


def iter_polys(p: int, max_deg_excl: int) -> Iterator[Poly]:
    """All polynomials of degree < max_deg_excl, lexicographic coefficients."""
    for coeffs in itertools.product(range(p), repeat=max_deg_excl):
        yield normalize(coeffs)


def iter_monic_polys(p: int, max_deg_excl: int) -> Iterator[Poly]:
    for d in range(max_deg_excl):
        for tail in itertools.product(range(p), repeat=d):
            yield list(tail) + [1]


def enumerate_codebook(cp: CodeParams, with_poles: bool = False):
    """All canonical reduced fraction vectors; guarded exhaustive walk.

    with_poles=False restricts to denominators coprime to M (the domain of
    :func:`encode`); with_poles=True admits any nonzero denominator for use
    with the multi-precision pole encoder.
    """
    p = cp.field.p
    size = p ** (cp.ell * cp.d_f + cp.d_g)
    if size > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"codebook enumeration of {size} candidates exceeds the "
            f"{BRUTE_FORCE_LIMIT} guard")
    out = []
    for g in iter_monic_polys(p, cp.d_g):
        if not with_poles:
            if pgcd(g, cp.points.M, p) != [1]:
                continue
        for fs in itertools.product(iter_polys(p, cp.d_f), repeat=cp.ell):
            fv = FractionVector([list(f) for f in fs], list(g))
            if not fv.is_reduced(p):
                continue
            out.append(fv)
    return out


def min_distance_bruteforce(cp: CodeParams) -> int:
    """Exact minimum distance by exhaustive codebook enumeration."""
    fvs = enumerate_codebook(cp, with_poles=False)
    if len(fvs) < 2:
        raise ValueError("fewer than two codewords")
    words = [encode(fv, cp) for fv in fvs]
    best = None
    for a in range(len(words)):
        wa = words[a]
        for b in range(a + 1, len(words)):
            d = distance(wa, words[b], cp)
            if best is None or d < best:
                best = d
    return best
