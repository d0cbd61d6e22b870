"""Seeded, platform-independent instance generators.

All randomness flows through SplitMix64, a fixed 64-bit generator chosen
so that identical (spec, seed) inputs produce byte-identical instances on
every platform and Python version.  Seed 0 is reserved for documentation
examples.  Concurrent batch generation derives per-instance seeds as
seed XOR index, keeping results independent of worker scheduling.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .digraph import Digraph, UndirectedGraph, WeightMap
from .errors import BadProfile
from .stars import GeneralizedStarDecomposition, validate_decomposition

_MASK = (1 << 64) - 1


class Rng:
    """SplitMix64 stream: next_u64, unbiased bounded draws, bits, shuffles."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def bit(self) -> int:
        return self.next_u64() & 1

    def below(self, n: int) -> int:
        """Uniform draw in [0, n) by rejection sampling."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        limit = _MASK + 1 - ((_MASK + 1) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


@dataclass(frozen=True)
class GenSpec:
    """Size parameters for one generalized-star instance.

    a_profile lists |A1|..|Ak| (each >= 1), x_profile lists |X1|..|Xn|
    (each >= 1, k <= n), a0 counts isolated vertices.
    """

    seed: int = 0
    a0: int = 0
    a_profile: tuple[int, ...] = ()
    x_profile: tuple[int, ...] = ()
    weight_max: int = 10

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "a0": self.a0,
            "a_profile": list(self.a_profile),
            "x_profile": list(self.x_profile),
            "weight_max": self.weight_max,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GenSpec":
        return cls(
            seed=int(d.get("seed", 0)),
            a0=int(d.get("a0", 0)),
            a_profile=tuple(int(x) for x in d.get("a_profile", [])),
            x_profile=tuple(int(x) for x in d.get("x_profile", [])),
            weight_max=int(d.get("weight_max", 10)),
        )


def random_tournament(n: int, seed: int) -> Digraph:
    """Each pair (u,v), u < v in sorted order, oriented by one stream bit
    (0 keeps u -> v)."""
    if n < 1:
        raise ValueError("tournament needs at least one vertex")
    rng = Rng(seed)
    g = Digraph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.bit() == 0:
                g.add_arc(u, v)
            else:
                g.add_arc(v, u)
    return g


def random_graph(n: int, seed: int) -> UndirectedGraph:
    """Each pair present with probability 1/2, one stream bit per pair."""
    rng = Rng(seed)
    g = UndirectedGraph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.bit():
                g.add_edge(u, v)
    return g


def random_digraph_missing(g: UndirectedGraph, seed: int) -> Digraph:
    """Orient every non-edge of g pseudorandomly; edges of g stay missing."""
    rng = Rng(seed)
    d = Digraph(g.n)
    for u, v in g.non_edges():
        if rng.bit() == 0:
            d.add_arc(u, v)
        else:
            d.add_arc(v, u)
    return d


def random_weights(n: int, seed: int, max_w: int) -> WeightMap:
    """Integer weights uniform in [0, max_w]; zeros exercise the
    infinitesimal perturbation downstream."""
    if max_w < 0:
        raise ValueError("max_w must be nonnegative")
    rng = Rng(seed)
    return WeightMap([rng.below(max_w + 1) for _ in range(n)])


def _check_profiles(a0: int, a_profile, x_profile) -> None:
    if a0 < 0:
        raise BadProfile("isolated count must be nonnegative")
    if any(k < 1 for k in a_profile):
        raise BadProfile("every ray class must be nonempty")
    if any(k < 1 for k in x_profile):
        raise BadProfile("every core layer must be nonempty")
    if len(a_profile) > len(x_profile):
        raise BadProfile("more ray classes than core layers")


def gen_generalized_star(
    a0: int = 0,
    a_profile=(),
    x_profile=(),
    spec: Optional[GenSpec] = None,
) -> tuple[UndirectedGraph, GeneralizedStarDecomposition]:
    """Build a generalized star and its intended decomposition.

    Vertices are laid out A0, then A1..Ak, then X1..Xn, so failures stay
    readable.  The result always passes validate_decomposition.
    """
    if spec is not None:
        a0, a_profile, x_profile = spec.a0, spec.a_profile, spec.x_profile
    a_profile = tuple(a_profile)
    x_profile = tuple(x_profile)
    _check_profiles(a0, a_profile, x_profile)

    a_sets: list[frozenset[int]] = []
    nxt = 0
    a_sets.append(frozenset(range(nxt, nxt + a0)))
    nxt += a0
    for size in a_profile:
        a_sets.append(frozenset(range(nxt, nxt + size)))
        nxt += size
    x_sets: list[frozenset[int]] = []
    for size in x_profile:
        x_sets.append(frozenset(range(nxt, nxt + size)))
        nxt += size

    g = UndirectedGraph(nxt)
    core: list[int] = sorted(v for x in x_sets for v in x)
    for i, u in enumerate(core):
        for v in core[i + 1 :]:
            g.add_edge(u, v)
    ladder: list[int] = []
    for i, x in enumerate(x_sets, start=1):
        ladder.extend(sorted(x))
        if i < len(a_sets):
            for a in sorted(a_sets[i]):
                for c in ladder:
                    g.add_edge(a, c)

    dec = GeneralizedStarDecomposition(tuple(a_sets), tuple(x_sets))
    ok, clause = validate_decomposition(g, dec)
    assert ok, f"generated decomposition failed its own validation: {clause}"
    return g, dec


def gen_star(ray_count: int) -> tuple[UndirectedGraph, GeneralizedStarDecomposition]:
    """Single-vertex core with ray_count rays (the star K(1, ray_count))."""
    if ray_count < 1:
        raise BadProfile("a star needs at least one ray")
    return gen_generalized_star(a_profile=(ray_count,), x_profile=(1,))


def gen_sun(core_size: int, ray_count: int) -> tuple[UndirectedGraph, GeneralizedStarDecomposition]:
    """Complete core with rays adjacent to all of it; ray_count 0 degrades
    to a complete graph."""
    if core_size < 1:
        raise BadProfile("a sun needs a nonempty core")
    if ray_count < 0:
        raise BadProfile("ray count must be nonnegative")
    if ray_count == 0:
        return gen_generalized_star(x_profile=(core_size,))
    return gen_generalized_star(a_profile=(ray_count,), x_profile=(core_size,))


def gen_complete(k: int) -> tuple[UndirectedGraph, GeneralizedStarDecomposition]:
    if k < 1:
        raise BadProfile("a complete graph needs at least one vertex")
    return gen_generalized_star(x_profile=(k,))


def random_star_profile(n: int, rng: Rng) -> GenSpec:
    """Deterministic random profile on exactly n vertices (n >= 2).

    Starts from singleton classes on a random layer count and scatters the
    remaining vertices over the isolated pool, ray classes, and core
    layers.
    """
    if n < 2:
        raise BadProfile("need at least two vertices for a layered profile")
    layers = 1 + rng.below(min(3, n // 2))
    a = [1] * layers
    x = [1] * layers
    a0 = 0
    for _ in range(n - 2 * layers):
        slot = rng.below(2 * layers + 1)
        if slot == 0:
            a0 += 1
        elif slot <= layers:
            a[slot - 1] += 1
        else:
            x[slot - layers - 1] += 1
    return GenSpec(a0=a0, a_profile=tuple(a), x_profile=tuple(x))
