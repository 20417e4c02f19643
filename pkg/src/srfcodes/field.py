"""Prime field arithmetic and deterministic random streams.

Field elements are plain Python ints in ``[0, p)``; a :class:`PrimeField`
carries the modulus and provides the ring operations.  Only prime moduli are
supported (p < 2**62), checked with a deterministic Miller-Rabin test.

Randomness comes from :class:`Rng`, a SplitMix64 generator.  It is seedable,
portable, and supports O(1) derivation of per-trial child streams: trial
``i`` of master seed ``s`` uses a generator seeded with the ``(i+1)``-th raw
output of the master stream, ``mix64(s + (i+1)*GAMMA)``.  Two trials of the
same campaign therefore never share state and any trial can be replayed in
isolation.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15

MAX_PRIME = 1 << 62

# Witnesses proving primality for every n < 3.3 * 10**24 (Sorenson-Webster),
# which covers the full supported range.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def mix64(z: int) -> int:
    """SplitMix64 finalizer: avalanche a 64-bit word."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for n < 3.3e24."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Rng:
    """SplitMix64 stream with unbiased bounded sampling."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def randrange(self, n: int) -> int:
        """Uniform int in [0, n), by rejection on 64-bit blocks."""
        if n <= 0:
            raise ValueError("randrange bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next64()
            if r < limit:
                return r % n

    def child(self, index: int) -> "Rng":
        """Independent stream for trial ``index`` (see module docstring)."""
        if index < 0:
            raise ValueError("child index must be >= 0")
        return Rng(mix64((self.state + (index + 1) * GAMMA) & MASK64))


class PrimeField:
    """The field Z/pZ for a prime p < 2**62."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int):
            raise TypeError("modulus must be an int")
        if p >= MAX_PRIME:
            raise ValueError(f"modulus {p} out of range (need p < 2**62)")
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def rand(self, rng: Rng) -> int:
        """Uniform field element."""
        return rng.randrange(self.p)

    def rand_nonzero(self, rng: Rng) -> int:
        while True:
            a = rng.randrange(self.p)
            if a:
                return a
