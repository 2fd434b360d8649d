"""Seeded random triangulations with a planted K_L or K_T.

The generator grows a stacked triangulation from the seed triangle (1, 2, 3)
by splitting random inner faces, then plants the requested configuration.
Randomness comes from SplitMix64 so that instances are portable: the state
advances by 0x9E3779B97F4A7C15 and is mixed with the multipliers
0xBF58476D1CE4E5B9 and 0x94D049BB133111EB (shifts 30, 27, 31).
"""

from __future__ import annotations

from dataclasses import dataclass

from orthoplan.planar import PlanarGraph, build_graph

MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int) -> None:
        self.state = seed & MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform-ish integer in ``[0, n)`` by modulo reduction."""
        return self.next() % n


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: int
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("L", "T"):
            raise ValueError(f"kind must be L or T, got {self.kind!r}")
        low = 5 if self.kind == "L" else 6
        if self.n < low:
            raise ValueError(f"kind {self.kind} needs n >= {low}, got {self.n}")


class _Stack:
    """A stacked triangulation under construction; faces are ccw triples."""

    def __init__(self) -> None:
        self.edges: list[tuple[int, int]] = [(1, 2), (2, 3), (1, 3)]
        self.faces: list[tuple[int, int, int]] = [(1, 2, 3)]
        self.n = 3

    def split(self, i: int) -> int:
        a, b, c = self.faces[i]
        self.n += 1
        w = self.n
        self.edges += [(a, w), (b, w), (c, w)]
        self.faces[i] = (a, b, w)
        self.faces += [(b, c, w), (c, a, w)]
        return w


def generate(spec: GenSpec) -> PlanarGraph:
    rng = SplitMix64(spec.seed)
    st = _Stack()
    base = spec.n - 2
    while st.n < base:
        st.split(rng.below(len(st.faces)))
    if spec.kind == "L":
        # w inside a face, then w' inside one of w's three triangles
        i = rng.below(len(st.faces))
        st.split(i)
        mine = [i, len(st.faces) - 2, len(st.faces) - 1]
        st.split(mine[rng.below(3)])
    else:
        # two degree-3 vertices on either side of an interior edge
        interior = [e for e in st.edges if not (e[0] <= 3 and e[1] <= 3)]
        p, q = interior[rng.below(len(interior))]
        sides = [i for i, f in enumerate(st.faces) if p in f and q in f]
        for i in sides:
            st.split(i)
    return build_graph(st.edges, outer_face=(1, 2, 3))
