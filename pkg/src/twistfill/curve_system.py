"""Systems of simple closed curves carried by a 4-valent map.

Curves are the straight-ahead orbits ``d -> sigma^2(alpha(d))``.  Each curve
is stored once, oriented by a representative dart; the reverse orbit is the
same curve.  Intersection numbers are crossing counts after every bigon has
been removed.

Bigons are found as discs: for two curves ``x, y`` and crossings ``u, w`` that
are consecutive along both, the loop formed by the two arcs is tested for
null-homology against a cohomology basis, then the faces on each side are
flooded and the side with Euler characteristic 1 is the bigon.  Among all
bigons the one with the fewest faces is removed first; such a bigon is crossed
only by arcs running from one side to the other, so removing it lowers the
crossing count of its two curves by 2 and leaves every other count unchanged.
The face test assumes every face is a disc, which holds whenever the system
contains a filling subsystem.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property

from .diagram import Diagram, DiagramError, Layout, layout
from .surface_map import CombMap, FaceReport, cycles, trace_faces, validate_map, vertex_of


class CurveSystemError(ValueError):
    pass


@dataclass(frozen=True)
class CurveRef:
    name: str
    representative_dart: int


@dataclass(frozen=True)
class IntersectionTable:
    names: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]

    def __getitem__(self, key):
        x, y = key
        return self.matrix[self.names.index(x)][self.names.index(y)]

    def pairs(self) -> dict[tuple[str, str], int]:
        n = len(self.names)
        return {(self.names[i], self.names[j]): self.matrix[i][j] for i in range(n) for j in range(i + 1, n)}

    def total(self) -> int:
        return sum(self.pairs().values())

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.matrix]


@dataclass(frozen=True)
class FillingReport:
    filling: bool
    face_count: int
    genus: int
    connected: bool


@dataclass(frozen=True)
class Bigon:
    curves: tuple[str, str]
    vertices: tuple[int, int]
    face_count: int


@dataclass(frozen=True)
class CurveSystem:
    map: CombMap
    ambient_genus: int
    curves: tuple[CurveRef, ...]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.curves)

    def ref(self, name) -> CurveRef:
        if isinstance(name, CurveRef):
            name = name.name
        for c in self.curves:
            if c.name == name:
                return c
        raise CurveSystemError(f"unknown curve {name!r}")

    @cached_property
    def _diagram(self) -> Diagram:
        return diagram_from_map(self.map, [(c.name, c.representative_dart) for c in self.curves])

    def diagram(self) -> Diagram:
        return self._diagram.copy()

    @cached_property
    def faces(self) -> FaceReport:
        return trace_faces(self.map)

    @classmethod
    def from_diagram(cls, diagram: Diagram, ambient_genus: int) -> CurveSystem:
        try:
            diagram.check()
            lay = layout(diagram)
        except DiagramError as exc:
            raise CurveSystemError(str(exc)) from None
        m = lay.comb_map()
        report = trace_faces(m)
        if report.genus > ambient_genus:
            raise CurveSystemError(f"genus overflow: map genus {report.genus} > {ambient_genus}")
        refs = tuple(CurveRef(n, d) for n, d in sorted(lay.reps().items()))
        return cls(m, ambient_genus, refs)

    def restrict(self, names) -> CurveSystem:
        names = [n.name if isinstance(n, CurveRef) else n for n in names]
        for n in names:
            self.ref(n)
        return CurveSystem.from_diagram(self._diagram.restrict(set(names)), self.ambient_genus)

    def rename(self, mapping: dict[str, str]) -> CurveSystem:
        d = self.diagram()
        d.rename(mapping)
        if len(set(d.curves)) != len(self.curves):
            raise CurveSystemError("renaming merges curves")
        return CurveSystem.from_diagram(d, self.ambient_genus)


def _name(x) -> str:
    return x.name if isinstance(x, CurveRef) else x


def _curve_ids(m: CombMap) -> list[int]:
    """Label every dart by its curve: the union of a straight-ahead orbit with its reverse."""
    n = m.dart_count
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    s = m.sigma
    for d in range(n):
        for e in (s[s[m.alpha[d]]], s[s[d]]):
            a, b = find(d), find(e)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(d) for d in range(n)]


def diagram_from_map(m: CombMap, refs) -> Diagram:
    """Diagram of a map whose curves are given as ``(name, representative dart)`` pairs."""
    s, a = m.sigma, m.alpha
    owner = vertex_of(m)
    out_of: dict[int, str] = {}
    curves: dict[str, list[int]] = {}
    for name, rep in refs:
        seq = []
        d = rep
        while True:
            out_of[d] = name
            seq.append(owner[d])
            d = s[s[a[d]]]
            if d == rep:
                break
        curves[name] = seq
    vcyc = cycles(s)
    crossings = {}
    for name, seq in curves.items():
        for v in seq:
            if v in crossings:
                continue
            p = next(d for d in vcyc[v] if out_of.get(d) == name)
            q = s[p]
            other = out_of.get(q) or out_of.get(s[s[q]])
            crossings[v] = (name, other, 1 if q in out_of else -1)
    return Diagram(curves, crossings)


def decompose(m: CombMap, g: int, names=None) -> CurveSystem:
    """Split a map into named simple closed curves.

    ``names`` maps curve names to representative darts; without it curves are
    named ``c1, c2, ...`` by minimal dart.
    """
    bad = validate_map(m)
    if bad:
        raise CurveSystemError(bad)
    if m.vertex_count == 0:
        raise CurveSystemError("no crossings")
    if g < 2:
        raise CurveSystemError(f"ambient genus must be >= 2, got {g}")
    cid = _curve_ids(m)
    vcyc = cycles(m.sigma)
    for v, c in enumerate(vcyc):
        if cid[c[0]] == cid[c[1]]:
            raise CurveSystemError(f"self-crossing orbit at vertex {v}")
    reps: dict[int, int] = {}
    for d in range(m.dart_count):
        reps.setdefault(cid[d], d)
    if names is None:
        refs = [(f"c{i + 1}", d) for i, d in enumerate(sorted(reps.values()))]
    else:
        items = list(names.items()) if isinstance(names, dict) else [(_name(r), r.representative_dart) for r in names]
        if len({n for n, _ in items}) != len(items):
            raise CurveSystemError("curve names are not distinct")
        named: dict[int, str] = {}
        for n, d in items:
            if not 0 <= d < m.dart_count:
                raise CurveSystemError(f"representative dart {d} of curve {n} out of range")
            if cid[d] in named:
                raise CurveSystemError(f"curves {named[cid[d]]} and {n} name the same orbit")
            named[cid[d]] = n
        missing = set(reps) - set(named)
        if missing:
            raise CurveSystemError(f"orbit through dart {reps[min(missing)]} is unnamed")
        refs = items
    report = trace_faces(m)
    if report.genus > g:
        raise CurveSystemError(f"genus overflow: map genus {report.genus} > {g}")
    return CurveSystem.from_diagram(diagram_from_map(m, refs), g)


def raw_crossing_counts(s: CurveSystem) -> IntersectionTable:
    return _table(s._diagram, s.names)


def _table(diagram: Diagram, names) -> IntersectionTable:
    counts = diagram.crossing_counts()
    names = tuple(names)
    rows = tuple(
        tuple(0 if x == y else counts.get(frozenset((x, y)), 0) for y in names) for x in names
    )
    return IntersectionTable(names, rows)


def algebraic_intersections(s: CurveSystem) -> IntersectionTable:
    """Signed crossing counts; entry ``(x, y)`` counts ``y`` crossing ``x`` right to left positively."""
    counts = s._diagram.algebraic_counts()
    names = s.names
    return IntersectionTable(names, tuple(tuple(counts.get((x, y), 0) for y in names) for x in names))


# --- bigon search ---------------------------------------------------------


class _Surface:
    """Faces, components and a cohomology basis of a diagram's map."""

    def __init__(self, diagram: Diagram):
        self.diagram = diagram
        lay = self.lay = layout(diagram)
        sigma, alpha = lay.sigma, lay.alpha
        nd = len(sigma)
        face = [-1] * nd
        faces: list[list[int]] = []
        for d0 in range(nd):
            if face[d0] >= 0:
                continue
            f = len(faces)
            cyc = []
            d = d0
            while face[d] < 0:
                face[d] = f
                cyc.append(d)
                d = sigma[alpha[d]]
            faces.append(cyc)
        self.face, self.faces = face, faces

        # primal spanning forest and components
        V = nd // 4
        comp = [-1] * V
        tree = [False] * nd
        ncomp = 0
        for root in range(V):
            if comp[root] >= 0:
                continue
            comp[root] = ncomp
            queue = deque([root])
            while queue:
                v = queue.popleft()
                for d in range(4 * v, 4 * v + 4):
                    w = alpha[d] >> 2
                    if comp[w] < 0:
                        comp[w] = ncomp
                        tree[d] = tree[alpha[d]] = True
                        queue.append(w)
            ncomp += 1
        self.comp = comp
        chi = [0] * ncomp
        fcount = [0] * ncomp
        for v in range(V):
            chi[comp[v]] -= 1  # V - E = V - 2V
        for f in faces:
            chi[comp[f[0] >> 2]] += 1
            fcount[comp[f[0] >> 2]] += 1
        self.chi, self.fcount = chi, fcount

        # dual spanning forest over edges not in the primal tree
        parent: list[tuple[int, int] | None] = [None] * len(faces)  # face -> (parent face, dart into this face)
        depth = [-1] * len(faces)
        cotree = [False] * nd
        for root in range(len(faces)):
            if depth[root] >= 0:
                continue
            depth[root] = 0
            queue = deque([root])
            while queue:
                f = queue.popleft()
                for d in faces[f]:
                    if tree[d]:
                        continue
                    g = face[alpha[d]]
                    if depth[g] < 0:
                        depth[g] = depth[f] + 1
                        parent[g] = (f, alpha[d])
                        cotree[d] = cotree[alpha[d]] = True
                        queue.append(g)
        self.cocycles: list[dict[int, int]] = []
        for d in range(nd):
            if tree[d] or cotree[d] or d > alpha[d]:
                continue
            z: dict[int, int] = {}
            self._cross(z, d)
            # walk the dual tree from face[d] back to face[alpha[d]]
            f, g = face[d], face[alpha[d]]
            up_f, up_g = [], []
            while f != g:
                if depth[f] >= depth[g]:
                    pf, e = parent[f]
                    up_f.append(e)  # crossing e leaves f towards its parent
                    f = pf
                else:
                    pg, e = parent[g]
                    up_g.append(e)
                    g = pg
            for e in up_f:
                self._cross(z, alpha[e])
            for e in reversed(up_g):
                self._cross(z, e)
            self.cocycles.append(z)

    def _cross(self, z: dict[int, int], d: int) -> None:
        """Record a dual path crossing the edge of ``d`` into the face of ``d``."""
        a = self.lay.alpha[d]
        z[d] = z.get(d, 0) + 1
        z[a] = z.get(a, 0) - 1

    def prefix(self, name: str) -> list[tuple[int, ...]]:
        darts = self.lay.out[name]
        out = [(0,) * len(self.cocycles)]
        acc = [0] * len(self.cocycles)
        for d in darts:
            for j, z in enumerate(self.cocycles):
                acc[j] += z.get(d, 0)
            out.append(tuple(acc))
        return out


def _arc(prefix, p: int, q: int) -> tuple[int, ...]:
    """Cocycle values of the forward arc from position p to position q (cyclic, q != p)."""
    if q > p:
        return tuple(b - a for a, b in zip(prefix[p], prefix[q]))
    return tuple(c - a + b for a, b, c in zip(prefix[p], prefix[q], prefix[-1]))


def _cyclic(start: int, stop: int, n: int) -> list[int]:
    out = []
    t = start
    while t != stop:
        out.append(t)
        t = (t + 1) % n
    return out


@dataclass
class _Candidate:
    x: str
    y: str
    p: int  # position of u along x
    q: int  # position of w along x
    forward: bool  # y runs from u to w along the bigon
    faces: int
    region: frozenset
    region_is_disc: bool
    loop: list


def _search(surf: _Surface, bound: int | None = None, collect: bool = False):
    """Smallest bigon, or with ``collect`` every bigon of at most ``bound`` faces."""
    d = surf.diagram
    lay = surf.lay
    names = lay.names
    positions = {n: {v: i for i, v in enumerate(d.curves[n])} for n in names}
    partner: dict[str, dict[str, list[int]]] = {n: {} for n in names}
    for n in names:
        for i, v in enumerate(d.curves[n]):
            z, _ = d.other(v, n)
            partner[n].setdefault(z, []).append(i)
    prefixes: dict[str, list] = {}

    def prefix(n):
        if n not in prefixes:
            prefixes[n] = surf.prefix(n)
        return prefixes[n]

    best: _Candidate | None = None
    found: list[_Candidate] = []
    for ix, x in enumerate(names):
        for y in names[ix + 1:]:
            xs = partner[x].get(y, [])
            m = len(xs)
            if m < 2:
                continue
            nx, ny = len(d.curves[x]), len(d.curves[y])
            for i in range(m):
                p, q = xs[i], xs[(i + 1) % m]
                u, w = d.curves[x][p], d.curves[x][q]
                pu, pw = positions[y][u], positions[y][w]
                a_val = _arc(prefix(x), p, q)
                # the y-arc may hold further x crossings: those are inner
                # bigons of a nested stack, removed earlier in the same pass
                for forward in (True, False):
                    if forward:
                        b_val = _arc(prefix(y), pu, pw)
                        if any(a - b for a, b in zip(a_val, b_val)):
                            continue
                        back = [lay.inc[y][t] for t in _cyclic_down(pw, pu, ny)]
                    else:
                        b_val = _arc(prefix(y), pw, pu)
                        if any(a + b for a, b in zip(a_val, b_val)):
                            continue
                        back = [lay.out[y][t] for t in _cyclic(pw, pu, ny)]
                    loop = [lay.out[x][t] for t in _cyclic(p, q, nx)] + back
                    limit = bound if collect else (best.faces if best else bound)
                    hit = _disc_side(surf, loop, limit)
                    if hit is None:
                        continue
                    nf, region, is_disc = hit
                    cand = _Candidate(x, y, p, q, forward, nf, region, is_disc, loop)
                    if collect:
                        found.append(cand)
                    elif best is None or nf < best.faces:
                        best = cand
                        if nf == 1:
                            return best
    return found if collect else best


def _cyclic_down(start: int, stop: int, n: int) -> list[int]:
    out = []
    t = start
    while t != stop:
        out.append(t)
        t = (t - 1) % n
    return out


def _disc_side(surf: _Surface, loop: list[int], bound: int | None):
    """Flood both sides of a separating loop; return (faces, region, region_is_disc) of its disc side."""
    alpha, face, faces = surf.lay.alpha, surf.face, surf.faces
    on_loop = set(loop)
    on_loop.update(alpha[d] for d in loop)
    side = [{face[d] for d in loop}, {face[alpha[d]] for d in loop}]
    if side[0] & side[1]:
        return None
    seen = [set(side[0]), set(side[1])]
    queues = [deque(side[0]), deque(side[1])]
    done = None
    while done is None:
        for k in (0, 1):
            if not queues[k]:
                done = k
                break
            f = queues[k].popleft()
            for e in faces[f]:
                if e in on_loop:
                    continue
                g = face[alpha[e]]
                if g in seen[1 - k]:
                    return None  # not separating
                if g not in seen[k]:
                    seen[k].add(g)
                    queues[k].append(g)
        if done is None and bound is not None and len(seen[0]) > bound and len(seen[1]) > bound:
            return None
    region = seen[done]
    edges2 = 0
    verts = set()
    for f in region:
        for e in faces[f]:
            verts.add(e >> 2)
            if e not in on_loop:
                edges2 += 1
    chi = len(region) - edges2 // 2 + len(verts) - len(loop)
    c = surf.comp[loop[0] >> 2]
    if chi == 1:
        return len(region), frozenset(region), True
    if surf.chi[c] - chi == 1:
        nf = surf.fcount[c] - len(region)
        if bound is not None and nf > bound:
            return None
        return nf, frozenset(region), False
    return None


def _disc_faces(surf: _Surface, cand: _Candidate) -> set:
    if cand.region_is_disc:
        return set(cand.region)
    c = surf.comp[cand.loop[0] >> 2]
    return {f for f, darts in enumerate(surf.faces) if surf.comp[darts[0] >> 2] == c} - cand.region


class _Chains:
    """Curves as cyclic linked lists, for cheap local edits during one reduction pass."""

    def __init__(self, d: Diagram):
        self.d = d
        self.nxt: dict[tuple[str, int], int] = {}
        self.prv: dict[tuple[str, int], int] = {}
        self.order = {n: list(seq) for n, seq in d.curves.items()}
        for n, seq in d.curves.items():
            m = len(seq)
            for i, v in enumerate(seq):
                self.nxt[n, v] = seq[(i + 1) % m]
                self.prv[n, v] = seq[i - 1]
        self.extra: dict[str, list[int]] = {n: [] for n in d.curves}
        self.touched: set[int] = set()  # endpoints of edges created by edits

    def walk(self, c: str, u: int, w: int, forward: bool = True) -> list[int] | None:
        """Vertices strictly between ``u`` and ``w`` along ``c``; None if ``w`` is not met."""
        step = self.nxt if forward else self.prv
        out = []
        v = step[c, u]
        while v != w:
            if v == u:
                return None
            out.append(v)
            v = step[c, v]
        return out

    def _link(self, c: str, a: int, b: int) -> None:
        self.nxt[c, a] = b
        self.prv[c, b] = a
        self.touched.add(a)
        self.touched.add(b)

    def insert_before(self, c: str, b: int, v: int) -> None:
        self._link(c, self.prv[c, b], v)
        self._link(c, v, b)
        self.extra[c].append(v)

    def insert_after(self, c: str, b: int, v: int) -> None:
        self._link(c, v, self.nxt[c, b])
        self._link(c, b, v)
        self.extra[c].append(v)

    def remove(self, c: str, v: int) -> None:
        p, n = self.prv.pop((c, v)), self.nxt.pop((c, v))
        if p != v:
            self._link(c, p, n)

    def replace_arc(self, c: str, u: int, w: int, inner: list[int], new: list[int]) -> None:
        """Replace the closed arc ``u .. w`` of ``c`` by ``new``."""
        p, n = self.prv[c, u], self.nxt[c, w]
        whole = p == w
        for v in [u, *inner, w]:
            del self.nxt[c, v], self.prv[c, v]
        if not new:
            if whole:
                raise CurveSystemError(f"curve {c} became crossing-free during bigon reduction")
            self._link(c, p, n)
            return
        if whole:
            p = n = new[-1] if len(new) > 1 else new[0]
            chain = new
            for a, b in zip(chain, chain[1:] + chain[:1]):
                self._link(c, a, b)
        else:
            chain = [p, *new, n]
            for a, b in zip(chain, chain[1:]):
                self._link(c, a, b)
        self.extra[c].extend(new)

    def two_gon(self, x: str, v: int) -> tuple[str, int] | None:
        """Is the x-edge leaving ``v`` one side of a face of degree two?

        That happens exactly when its ends are consecutive on the other curve
        too and carry opposite crossing signs.
        """
        w = self.nxt[x, v]
        if w == v:
            return None
        y, su = self.d.other(v, x)
        z, sw = self.d.other(w, x)
        if z != y or su == sw:
            return None
        if self.nxt[y, v] == w or self.prv[y, v] == w:
            return y, w
        return None

    def zip(self) -> int:
        """Remove degree-two faces created by earlier edits, following each chain of them."""
        moves = 0
        work = list(self.touched)
        self.touched = set()
        while work:
            v = work.pop()
            if v not in self.d.crossings:
                continue
            for x in self.d.crossings[v][:2]:
                for a in (self.prv[x, v], v):
                    if a not in self.d.crossings:
                        continue
                    hit = self.two_gon(x, a)
                    if hit is None:
                        continue
                    y, b = hit
                    for c in (x, y):
                        if self.nxt[c, self.nxt[c, a]] == a:
                            raise CurveSystemError(f"curve {c} became crossing-free during bigon reduction")
                    for c in (x, y):
                        self.remove(c, a)
                        self.remove(c, b)
                    del self.d.crossings[a], self.d.crossings[b]
                    moves += 1
                    work.extend(self.touched)
                    self.touched = set()
                    break
                else:
                    continue
                break
        return moves

    def alive(self, c: str, v: int) -> bool:
        return (c, v) in self.nxt

    def to_diagram(self) -> Diagram:
        curves = {}
        for c, seq in self.order.items():
            start = next((v for v in seq if self.alive(c, v)), None)
            if start is None:
                start = next((v for v in self.extra[c] if self.alive(c, v)), None)
            if start is None:
                raise CurveSystemError(f"curve {c} became crossing-free during bigon reduction")
            out = [start]
            v = self.nxt[c, start]
            while v != start:
                out.append(v)
                v = self.nxt[c, v]
            curves[c] = out
        return Diagram(curves, self.d.crossings)


def _try_remove(surf: _Surface, cand: _Candidate, ch: _Chains, disc: set) -> bool:
    """Push the x-arc of the bigon across the y-arc if it is still a balanced bigon in ``ch``.

    Earlier moves of the same pass may have edited the arcs (only moves whose
    disc lies inside this one are allowed to overlap it), so the arcs are read
    from the live chains while sides are decided from the pass's surface.
    """
    d = ch.d
    old = surf.diagram
    lay = surf.lay
    x, y = cand.x, cand.y
    u, w = old.curves[x][cand.p], old.curves[x][cand.q]
    if not (ch.alive(x, u) and ch.alive(x, w)):
        return False
    alpha_inner = ch.walk(x, u, w)
    beta_inner = ch.walk(y, u, w, cand.forward)
    if alpha_inner is None or beta_inner is None:
        return False
    count = Counter()
    for v in alpha_inner:
        z, _ = d.other(v, x)
        if z == y:
            return False
        count[z] += 1
    for v in beta_inner:
        if v not in lay.index:
            return False
        z, _ = d.other(v, y)
        count[z] -= 1
        if count[z] < 0:
            return False  # would raise a crossing count (or make x cross itself)
    s_y = 1 if cand.forward else -1
    new_x = []
    for b in beta_inner:
        z, eps = d.other(b, y)
        nv = d.new_vertex(x, z, eps * s_y)
        new_x.append(nv)
        zpos = _position(surf, z, b)
        if surf.face[lay.out[z][zpos]] in disc:
            ch.insert_before(z, b, nv)
        else:
            ch.insert_after(z, b, nv)
    for v in alpha_inner:
        z, _ = d.other(v, x)
        ch.remove(z, v)
    ch.replace_arc(x, u, w, alpha_inner, new_x)
    ch.remove(y, u)
    ch.remove(y, w)
    for v in (u, w, *alpha_inner):
        del d.crossings[v]
    return True


def _position(surf: _Surface, z: str, v: int) -> int:
    cache = surf.__dict__.setdefault("_positions", {})
    pos = cache.get(z)
    if pos is None:
        pos = cache[z] = {u: i for i, u in enumerate(surf.diagram.curves[z])}
    return pos[v]


def find_bigon_in(diagram: Diagram) -> tuple[_Surface, _Candidate] | None:
    surf = _Surface(diagram)
    cand = _search(surf)
    return None if cand is None else (surf, cand)


BATCH_FACES = 64


def _reduce_pass(diagram: Diagram) -> tuple[Diagram, int]:
    """One sweep over the small bigons of one surface, innermost first.

    A bigon is skipped when it touches an earlier move of the pass whose disc
    is not nested inside its own; nested stacks therefore collapse in one pass.
    """
    surf = _Surface(diagram)
    cands = _search(surf, BATCH_FACES, collect=True)
    if not cands:
        best = _search(surf)
        if best is None:
            return diagram, 0
        cands = [best]
    cands.sort(key=lambda c: (c.faces, c.x, c.y, c.p, c.forward))
    ch = _Chains(diagram.copy())
    alpha = surf.lay.alpha
    discs: list[set] = []
    by_face: dict[int, list[int]] = {}
    by_vertex: dict[int, list[int]] = {}
    for c in cands:
        disc = _disc_faces(surf, c)
        foot = disc | {surf.face[e] for e in c.loop} | {surf.face[alpha[e]] for e in c.loop}
        verts = {e >> 2 for e in c.loop}
        touching = {i for f in foot for i in by_face.get(f, ())}
        touching.update(i for v in verts for i in by_vertex.get(v, ()))
        if any(not discs[i] <= disc for i in touching):
            continue
        if not _try_remove(surf, c, ch, disc):
            continue
        k = len(discs)
        discs.append(disc)
        for f in foot:
            by_face.setdefault(f, []).append(k)
        for v in verts:
            by_vertex.setdefault(v, []).append(k)
    if not discs:
        raise CurveSystemError("no bigon of the pass could be removed")
    moves = len(discs) + ch.zip()
    return ch.to_diagram(), moves


def reduce_diagram(diagram: Diagram, max_steps: int | None = None) -> tuple[Diagram, int]:
    """Remove bigons until none is left; returns the reduced diagram and the number of moves."""
    steps = 0
    while True:
        diagram, moves = _reduce_pass(diagram)
        if not moves:
            return diagram, steps
        steps += moves
        if max_steps is not None and steps > max_steps:
            raise CurveSystemError("bigon reduction did not terminate")


def find_bigon(s: CurveSystem) -> Bigon | None:
    hit = find_bigon_in(s._diagram)
    if hit is None:
        return None
    surf, c = hit
    seq = s._diagram.curves[c.x]
    return Bigon((c.x, c.y), (seq[c.p], seq[c.q]), c.faces)


def reduce_bigons(s: CurveSystem) -> CurveSystem:
    reduced, steps = reduce_diagram(s.diagram(), max_steps=len(s._diagram.crossings) // 2 + 1)
    if steps == 0:
        return s
    return CurveSystem.from_diagram(reduced, s.ambient_genus)


def intersection_number(s: CurveSystem, x, y) -> int:
    x, y = _name(x), _name(y)
    s.ref(x)
    s.ref(y)
    if x == y:
        raise CurveSystemError("intersection_number needs two distinct curves")
    return raw_crossing_counts(reduce_bigons(s))[x, y]


def intersection_table(s: CurveSystem) -> IntersectionTable:
    return raw_crossing_counts(reduce_bigons(s))


def is_filling(s: CurveSystem, names=None) -> FillingReport:
    """Filling test: the union is connected and its complement consists of discs (map genus equals g).

    With ``names``, the test applies to that subsystem; a curve meeting no
    other member makes the subsystem disconnected.
    """
    if names is not None:
        names = {_name(n) for n in names}
        d = s._diagram.restrict(names)
        if any(not seq for seq in d.curves.values()):
            return FillingReport(False, 0, 0, False)
        s = CurveSystem.from_diagram(d, s.ambient_genus)
    rep = s.faces
    connected = rep.components == 1
    filling = connected and rep.genus == s.ambient_genus
    if filling:
        total = raw_crossing_counts(s).total()
        if total != 2 * s.ambient_genus - 2 + rep.face_count:
            raise CurveSystemError(
                f"Euler identity violated: {total} != 2g - 2 + {rep.face_count}"
            )
    return FillingReport(filling, rep.face_count, rep.genus, connected)
