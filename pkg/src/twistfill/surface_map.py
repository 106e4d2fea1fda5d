"""Combinatorial maps of 4-valent graphs cellularly embedded in closed oriented surfaces.

A map on ``4V`` darts is a pair of permutations: ``sigma`` rotates the darts
counterclockwise around each vertex and ``alpha`` pairs the two darts of each
edge.  Faces are the cycles of ``sigma . alpha`` (apply ``alpha`` first); this
convention is used everywhere in the package.
"""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CombMap:
    vertex_count: int
    sigma: tuple[int, ...]
    alpha: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "alpha", tuple(self.alpha))

    @property
    def dart_count(self) -> int:
        return len(self.sigma)

    @property
    def edge_count(self) -> int:
        return len(self.alpha) // 2


@dataclass(frozen=True)
class FaceReport:
    faces: tuple[tuple[int, ...], ...]
    vertex_count: int
    edge_count: int
    euler: int
    genus: int
    components: int
    component_genera: tuple[int, ...] = field(default=())

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def degree_multiset(self) -> tuple[int, ...]:
        return tuple(sorted(len(f) for f in self.faces))


def cycles(perm) -> list[list[int]]:
    """Cycles of a permutation given as a sequence, each starting at its minimal element."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        out.append(cyc)
    return out


def validate_map(m: CombMap) -> str | None:
    """Return ``None`` if ``m`` is a valid 4-valent map, else a description of the first violation."""
    n = 4 * m.vertex_count
    if len(m.sigma) != n or len(m.alpha) != n:
        return f"dart count {len(m.sigma)}/{len(m.alpha)} differs from 4V = {n}"
    for name, perm in (("sigma", m.sigma), ("alpha", m.alpha)):
        if sorted(perm) != list(range(n)):
            return f"{name} is not a permutation of the darts"
    for d in range(n):
        if m.alpha[d] == d:
            return f"alpha not fixed-point-free (dart {d})"
        if m.alpha[m.alpha[d]] != d:
            return f"alpha not an involution (dart {d})"
    cyc = cycles(m.sigma)
    for c in cyc:
        if len(c) != 4:
            return f"vertex not 4-valent (dart {c[0]})"
    if len(cyc) != m.vertex_count:
        return f"sigma has {len(cyc)} vertices, expected {m.vertex_count}"
    return None


def vertex_of(m: CombMap) -> list[int]:
    """Vertex index of every dart; vertices are numbered by the minimal dart of their sigma-cycle."""
    owner = [0] * m.dart_count
    for v, c in enumerate(cycles(m.sigma)):
        for d in c:
            owner[d] = v
    return owner


def connected_components(m: CombMap) -> list[list[int]]:
    """Vertex partition of the underlying graph, sorted by minimal vertex."""
    owner = vertex_of(m)
    parent = list(range(m.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for d in range(m.dart_count):
        a, b = find(owner[d]), find(owner[m.alpha[d]])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(m.vertex_count):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def face_permutation(m: CombMap) -> list[int]:
    return [m.sigma[m.alpha[d]] for d in range(m.dart_count)]


def trace_faces(m: CombMap) -> FaceReport:
    faces = cycles(face_permutation(m))
    owner = vertex_of(m)
    comps = connected_components(m)
    comp_of = {}
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    counts = [[len(c), 2 * len(c), 0] for c in comps]
    for f in faces:
        counts[comp_of[owner[f[0]]]][2] += 1
    genera = []
    for v, e, f in counts:
        chi = v - e + f
        # each component is a closed oriented surface, so chi is even
        genera.append((2 - chi) // 2)
    V, E = m.vertex_count, m.edge_count
    return FaceReport(
        faces=tuple(tuple(f) for f in faces),
        vertex_count=V,
        edge_count=E,
        euler=V - E + len(faces),
        genus=sum(genera),
        components=len(comps),
        component_genera=tuple(genera),
    )


def disjoint_union(m1: CombMap, m2: CombMap) -> CombMap:
    shift = m1.dart_count
    return CombMap(
        m1.vertex_count + m2.vertex_count,
        m1.sigma + tuple(d + shift for d in m2.sigma),
        m1.alpha + tuple(d + shift for d in m2.alpha),
    )


def perm_from_cycles(n: int, cyc) -> list[int]:
    perm = list(range(n))
    for c in cyc:
        for i, d in enumerate(c):
            perm[d] = c[(i + 1) % len(c)]
    return perm
