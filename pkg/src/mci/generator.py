"""Seeded random hypergraph generator for benchmark scenarios.

A scenario is (n, d, type): n vertices, m = d*n hyperedges, and one of
five hyperedge-size regimes. Types 1-4 draw each hyperedge's size
uniformly between type-specific bounds and then sample distinct
vertices uniformly until that size is reached; type 5 includes each
vertex independently with probability 1/2 and redraws until m distinct
hyperedges of size >= 2 exist, which makes its sizes binomial(n, 1/2)
truncated below 2.

Reproducibility contract (all constants fixed so any implementation
can replay instances bit for bit):

* PRNG: PCG32, XSH-RR 64/32 output function, multiplier
  6364136223846793005, increment 2*initseq + 1, seeded with the
  reference two-step initialisation.
* Bounded draws: threshold rejection ((2^32 - n) % n), then r % n -- no
  modulo bias.
* Coin flips: lowest bit of the next 32-bit output.
* Per-instance streams: instance `index` of seed `s` uses splitmix64
  outputs 2*index and 2*index+1 of the stream seeded at `s` (gamma
  0x9E3779B97F4A7C15) as (initstate, initseq).
"""

from __future__ import annotations

from dataclasses import dataclass

from .hypergraph import Hypergraph

MASK64 = (1 << 64) - 1
PCG_MULT = 6364136223846793005
SPLITMIX_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    z = (x + SPLITMIX_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class Pcg32:
    """Reference PCG32 stream (XSH-RR 64/32)."""

    __slots__ = ("state", "inc")

    def __init__(self, initstate: int, initseq: int):
        self.state = 0
        self.inc = ((initseq << 1) | 1) & MASK64
        self.next_u32()
        self.state = (self.state + initstate) & MASK64
        self.next_u32()

    def next_u32(self) -> int:
        old = self.state
        self.state = (old * PCG_MULT + self.inc) & MASK64
        xorshifted = (((old >> 18) ^ old) >> 27) & 0xFFFFFFFF
        rot = old >> 59
        return ((xorshifted >> rot) | (xorshifted << ((32 - rot) & 31))) & 0xFFFFFFFF

    def bounded(self, n: int) -> int:
        """Uniform draw from [0, n) by threshold rejection."""
        if n <= 0:
            raise ValueError("bound must be positive")
        threshold = ((1 << 32) - n) % n
        while True:
            r = self.next_u32()
            if r >= threshold:
                return r % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform draw from the inclusive range [lo, hi]."""
        return lo + self.bounded(hi - lo + 1)

    def coin(self) -> bool:
        return bool(self.next_u32() & 1)


def instance_rng(seed: int, index: int) -> Pcg32:
    """Independent, individually regenerable stream for one instance."""
    base = seed & MASK64
    initstate = splitmix64((base + (2 * index) * SPLITMIX_GAMMA) & MASK64)
    initseq = splitmix64((base + (2 * index + 1) * SPLITMIX_GAMMA) & MASK64)
    return Pcg32(initstate, initseq)


@dataclass(frozen=True)
class Scenario:
    """Generator parameters: m = density * n hyperedges of the given type."""

    n: int
    density: int
    htype: int
    count: int = 50
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need at least 2 vertices")
        if self.density < 1:
            raise ValueError("density must be a positive integer")
        if self.htype not in (1, 2, 3, 4, 5):
            raise ValueError(f"hyperedge type must be 1..5, got {self.htype}")
        if self.count < 1:
            raise ValueError("count must be positive")

    @property
    def m(self) -> int:
        return self.density * self.n


def size_bounds(htype: int, n: int) -> tuple[int, int]:
    """Inclusive hyperedge-size bounds for types 1-4."""
    quarter = -(-n // 4)
    half = -(-n // 2)
    if htype == 1:
        return 2, n
    if htype == 2:
        return 2, half
    if htype == 3:
        return quarter, n
    if htype == 4:
        return quarter, half
    raise ValueError(f"type {htype} has no size bounds")


def generate_instance(scenario: Scenario, index: int) -> Hypergraph:
    """Instance `index` of the scenario, deterministic in (seed, index)."""
    if not 0 <= index < scenario.count:
        raise ValueError(f"index {index} outside 0..{scenario.count - 1}")
    rng = instance_rng(scenario.seed, index)
    n, m = scenario.n, scenario.m
    hyperedges: list[frozenset[int]] = []
    if scenario.htype == 5:
        if m > 2**n - n - 1:
            raise ValueError(
                f"cannot draw {m} distinct hyperedges of size >= 2 on {n} vertices"
            )
        seen: set[frozenset[int]] = set()
        while len(hyperedges) < m:
            draw = frozenset(v for v in range(1, n + 1) if rng.coin())
            if len(draw) < 2 or draw in seen:
                continue
            seen.add(draw)
            hyperedges.append(draw)
    else:
        lo, hi = size_bounds(scenario.htype, n)
        if lo > hi:
            raise ValueError(f"type {scenario.htype} has empty size range for n={n}")
        for _ in range(m):
            size = rng.randint(lo, hi)
            s: set[int] = set()
            while len(s) < size:
                s.add(rng.randint(1, n))
            hyperedges.append(frozenset(s))
    return Hypergraph(n, hyperedges)


def generate_all(scenario: Scenario) -> list[Hypergraph]:
    return [generate_instance(scenario, i) for i in range(scenario.count)]


def instance_filename(scenario: Scenario, index: int) -> str:
    return f"s{scenario.n}_{scenario.density}_{scenario.htype}_{scenario.seed}_{index}.mci"
