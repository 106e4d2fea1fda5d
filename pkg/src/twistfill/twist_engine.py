"""Dehn twists on curve systems and the twist-family constructions built on them.

A twist along ``c`` is performed in a thin annulus around ``c`` with
coordinates ``(theta, t)``: ``theta`` runs along ``c`` and ``t`` crosses it
from its right side (t = 0) to its left side (t = 1).  Every curve crossing
``c`` does so in one straight arc ``theta = const``.  Twisting the target
replaces each of its arcs by the sheared arc ``theta + k t``; a sheared arc
meets every other straight arc ``|k|`` times and the core once.  Positive
``k`` makes strands turn right as they reach ``c``.

Images of curves are computed on parallel copies, so the originals stay in
the diagram as a scaffold and bigon reduction always works on a cellular map.
"""
from __future__ import annotations

import itertools
import logging
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .curve_system import (
    CurveRef,
    CurveSystem,
    CurveSystemError,
    IntersectionTable,
    _name,
    _table,
    algebraic_intersections,
    intersection_number,
    intersection_table,
    is_filling,
    reduce_bigons,
    reduce_diagram,
)
from .diagram import Diagram
from .free_group import pingpong_generator, stallings_rank

log = logging.getLogger(__name__)


class TwistError(ValueError):
    pass


@dataclass(frozen=True)
class TwistWord:
    """Product of twist powers, applied to curves from left to right.

    ``letters`` holds runs ``(curve, exponent)``; adjacent runs on the same
    curve are merged and zero exponents dropped.
    """

    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        runs: list[list] = []
        for name, e in self.letters:
            name = _name(name)
            if runs and runs[-1][0] == name:
                runs[-1][1] += e
            else:
                runs.append([name, e])
            if runs[-1][1] == 0:
                runs.pop()
        object.__setattr__(self, "letters", tuple((n, e) for n, e in runs))

    @classmethod
    def parse(cls, text: str) -> TwistWord:
        """Parse ``"a b^-1 a^2"``; an upper-case single letter name ``B`` means ``b^-1``."""
        letters = []
        for tok in text.replace("*", " ").split():
            m = re.fullmatch(r"([A-Za-z_][\w']*)(?:\^(-?\d+))?", tok)
            if not m:
                raise TwistError(f"bad twist letter {tok!r}")
            name, e = m.group(1), int(m.group(2) or 1)
            letters.append((name, e))
        return cls(tuple(letters))

    def __len__(self):
        return sum(abs(e) for _, e in self.letters)

    def __mul__(self, other: TwistWord) -> TwistWord:
        return TwistWord(self.letters + other.letters)

    def inverse(self) -> TwistWord:
        return TwistWord(tuple((n, -e) for n, e in reversed(self.letters)))

    def units(self) -> list[tuple[str, int]]:
        return [(n, 1 if e > 0 else -1) for n, e in self.letters for _ in range(abs(e))]

    def __str__(self):
        return " ".join(n if e == 1 else f"{n}^{e}" for n, e in self.letters) or "1"


# --- surgery ----------------------------------------------------------------


def shear(d: Diagram, along: str, targets, k: int) -> None:
    """Twist every curve in ``targets`` along ``along`` by ``k`` in place; other curves stay put."""
    targets = set(targets)
    if along in targets:
        raise TwistError("a curve cannot be twisted along itself")
    if k == 0:
        return
    core = d.curves[along]
    M = len(core)
    arcs = [(v,) + d.other(v, along) for v in core]  # (vertex, curve, sign of crossing the core)
    sheared = [j for j, a in enumerate(arcs) if a[1] in targets]
    if not sheared:
        return
    straight = [i for i, a in enumerate(arcs) if a[1] not in targets]
    sk, ak = (1 if k > 0 else -1), abs(k)
    core_t = Fraction(1, 2 * M * ak)
    events: dict[int, list[tuple[Fraction, int]]] = {j: [] for j in range(M)}
    for i in straight:
        events[i].append((core_t, arcs[i][0]))
    core_seq: list[tuple[Fraction, int]] = [(Fraction(i, M), arcs[i][0]) for i in straight]
    for j in sheared:
        _, x, sx = arcs[j]
        for i in straight:
            _, y, sy = arcs[i]
            delta = Fraction((i - j) % M, M)
            base = delta if k > 0 else 1 - delta
            for z in range(ak):
                t = (base + z) / ak
                nv = d.new_vertex(x, y, sk * sx * sy)
                events[j].append((t, nv))
                events[i].append((t, nv))
        nv = d.new_vertex(along, x, sx)
        events[j].append((core_t, nv))
        core_seq.append(((Fraction(j, M) + Fraction(sk, 2 * M)) % 1, nv))
    repl: dict[str, dict[int, list[int]]] = {}
    for j in range(M):
        v, y, sy = arcs[j]
        ev = sorted(events[j], reverse=sy < 0)
        repl.setdefault(y, {})[v] = [w for _, w in ev]
    for y, r in repl.items():
        d.curves[y] = [w for v in d.curves[y] for w in r.get(v, (v,))]
    d.curves[along] = [w for _, w in sorted(core_seq)]
    for j in sheared:
        del d.crossings[arcs[j][0]]


def transport(s: CurveSystem | Diagram, word: TwistWord, names, suffix: str = "'", reduce: bool = True) -> Diagram:
    """Diagram holding ``s`` together with the images ``word(x)`` of the named curves.

    Images are named ``x + suffix``.  Twist letters may refer to any curve
    present, including images computed earlier in the same diagram.
    """
    d = s.diagram() if isinstance(s, CurveSystem) else s.copy()
    names = [_name(n) for n in names]
    images = []
    for n in names:
        if n not in d.curves:
            raise CurveSystemError(f"unknown curve {n!r}")
        d.pushoff(n, n + suffix)
        images.append(n + suffix)
    for c, e in word.letters:
        if c not in d.curves:
            raise CurveSystemError(f"unknown curve {c!r}")
        shear(d, c, images, e)
        if reduce:
            d, _ = reduce_diagram(d)
    return d


def dehn_twist(s: CurveSystem, c, target, k: int) -> CurveSystem:
    """Replace ``target`` by ``T_c^k(target)`` in minimal position with the other curves."""
    c, target = _name(c), _name(target)
    s.ref(c)
    s.ref(target)
    if c == target:
        raise TwistError("twist curve and target must differ")
    if k == 0:
        return s
    d = transport(s, TwistWord(((c, k),)), [target], suffix="#")
    d.remove_curve(target)
    d.rename({target + "#": target})
    return CurveSystem.from_diagram(d, s.ambient_genus)


def apply_twist_word(s: CurveSystem, w: TwistWord) -> CurveSystem:
    """Transport every curve of ``s`` by ``w``; names are kept."""
    if not w.letters:
        return s
    for c, _ in w.letters:
        s.ref(c)
    d = transport(s, w, s.names, suffix="#")
    for n in s.names:
        d.remove_curve(n)
    d.rename({n + "#": n for n in s.names})
    return CurveSystem.from_diagram(d, s.ambient_genus)


def image_system(s: CurveSystem, w: TwistWord, names, suffix="'") -> CurveSystem:
    """``s`` plus the images of the named curves, pairwise in minimal position."""
    return CurveSystem.from_diagram(transport(s, w, names, suffix), s.ambient_genus)


# --- families -------------------------------------------------------------


def family_size_ok(d: int) -> None:
    if d < 2:
        raise TwistError("d < 2")


def construct_family(s: CurveSystem, a, b, d: int) -> CurveSystem:
    """The system ``c1 = a, c(k+1) = T_b^-k(a)`` for ``1 <= k <= d-1``; ``b`` is not a member."""
    a, b = _name(a), _name(b)
    family_size_ok(d)
    if a == b or not is_filling(s, [a, b]).filling:
        raise TwistError("not a filling pair")
    diag = _family_diagram(s, a, b, d)
    diag.remove_curve(b)
    diag.rename({a: "c1"})
    return CurveSystem.from_diagram(diag, s.ambient_genus)


def _family_diagram(s: CurveSystem, a: str, b: str, d: int) -> Diagram:
    diag = s.diagram().restrict({a, b})
    prev = a
    for k in range(2, d + 1):
        cur = f"c{k}"
        diag.pushoff(prev, cur)
        shear(diag, b, [cur], -1)
        prev = cur
    diag, steps = reduce_diagram(diag)
    if steps:
        log.debug("family diagram needed %d bigon moves", steps)
    return diag


def family_formula_faces(base: int, d: int, g: int) -> int:
    return base * base * d * (d - 1) * (d + 1) // 6 - 2 * g + 2


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def verify_cor23(s: CurveSystem, a, b, k_max: int) -> list[CheckResult]:
    """Check ``i(T_b^k(a), a) = |k| i(a,b)^2`` for ``-k_max <= k <= k_max``."""
    a, b = _name(a), _name(b)
    base = intersection_number(s, a, b)
    out = []
    for k in range(-k_max, k_max + 1):
        got = _image_intersection(s, b, k, a, a)
        want = abs(k) * base * base
        detail = f"k={k}: i(T_{b}^{k}({a}), {a}) = {got}, expected {want}"
        out.append(CheckResult(f"cor23[k={k}]", got == want, detail))
    return out


@lru_cache(maxsize=512)
def _image_row(s: CurveSystem, c: str, k: int, x: str) -> dict[str, int]:
    """Intersections of ``T_c^k(x)`` with every curve of ``s``."""
    if k == 0 or c == x:
        table = intersection_table(s)
        return {z: (0 if z == x else table[x, z]) for z in s.names}
    d = transport(s, TwistWord(((c, k),)), [x], suffix="#")
    counts = d.crossing_counts()
    return {z: counts.get(frozenset((x + "#", z)), 0) for z in s.names}


def _image_intersection(s: CurveSystem, c: str, k: int, x: str, z: str) -> int:
    return _image_row(s, c, k, x)[z]


def verify_prop22(s: CurveSystem, a, b, c, k: int) -> CheckResult:
    """Check ``|i(T_a^k(b), c) - |k| i(a,b) i(a,c)| <= i(b,c)``."""
    a, b, c = _name(a), _name(b), _name(c)
    table = intersection_table(s)

    def i(x, y):
        return 0 if x == y else table[x, y]

    lhs = _image_intersection(s, a, k, b, c)
    centre = abs(k) * i(a, b) * i(a, c)
    ok = abs(lhs - centre) <= i(b, c)
    return CheckResult(
        f"prop22[{a},{b},{c},k={k}]", ok, f"|{lhs} - {centre}| <= {i(b, c)}"
    )


# --- conjugation and relations ------------------------------------------


@dataclass(frozen=True)
class Action:
    """Observable image of one curve.

    ``row`` holds intersections with the system curves and ``pair_degrees``
    the face-degree multiset of the image together with each system curve.
    Two curves in minimal position are unique up to isotopy, so both are
    invariants of the image class.  ``degrees`` (faces of the whole system plus
    the image) is not: triangle moves among three curves change it.
    """

    row: tuple[tuple[str, int], ...]
    pair_degrees: tuple[tuple[str, tuple[int, ...]], ...]
    face_count: int
    degrees: tuple[int, ...]

    def same_class(self, other: Action) -> bool:
        return (self.row, self.pair_degrees, self.face_count) == (other.row, other.pair_degrees, other.face_count)


def _observe(d: Diagram, names, image: str, g: int) -> Action:
    sub = d.restrict(set(names) | {image})
    counts = sub.crossing_counts()
    row = tuple((z, counts.get(frozenset((image, z)), 0)) for z in names)
    pairs = []
    for z, n in row:
        if n == 0:
            pairs.append((z, ()))
            continue
        pair = CurveSystem.from_diagram(sub.restrict({z, image}), g)
        pairs.append((z, pair.faces.degree_multiset()))
    rep = CurveSystem.from_diagram(sub, g).faces
    return Action(row, tuple(pairs), rep.face_count, rep.degree_multiset())


def twist_action(s: CurveSystem, w: TwistWord, y: str) -> Action:
    d = transport(s, w, [y], suffix="#")
    return _observe(d, s.names, y + "#", s.ambient_genus)


@dataclass(frozen=True)
class ConjugationResult:
    ok: bool
    lhs: dict
    rhs: dict
    degrees_agree: bool  # whole-system face degrees, informational only


def verify_conjugation(s: CurveSystem, f: TwistWord, a, probes=None) -> ConjugationResult:
    """Compare ``T_{f(a)}`` with ``f T_a f^-1`` on every probe curve.

    Each side's image of a probe is compared by its intersection row, the
    face-degree multiset it forms with every system curve, and the face count
    of the whole configuration.
    """
    a = _name(a)
    probes = list(s.names if probes is None else (_name(p) for p in probes))
    axis = "_fa"
    base = transport(s, f, [a], suffix="@")
    base.rename({a + "@": axis})
    lhs, rhs = {}, {}
    for y in probes:
        dl = transport(base, TwistWord(((axis, 1),)), [y], suffix="#")
        lhs[y] = _observe(dl, s.names, y + "#", s.ambient_genus)
        dr = transport(s, f.inverse() * TwistWord(((a, 1),)) * f, [y], suffix="#")
        rhs[y] = _observe(dr, s.names, y + "#", s.ambient_genus)
    ok = all(lhs[y].same_class(rhs[y]) for y in probes)
    degrees = all(lhs[y].degrees == rhs[y].degrees for y in probes)
    return ConjugationResult(ok, lhs, rhs, degrees)


def reduced_words(gens, L: int):
    """All nonempty freely reduced words of length <= L over ``gens`` and inverses, shortlex order."""
    alphabet = [(g, 1) for g in gens] + [(g, -1) for g in gens]
    level = [()]
    for _ in range(L):
        nxt = []
        for w in level:
            for letter in alphabet:
                if w and w[-1][0] == letter[0] and w[-1][1] == -letter[1]:
                    continue
                nxt.append(w + (letter,))
        yield from nxt
        level = nxt


class Homology:
    """Action of twists on the span of the curve classes of a system, via algebraic intersections."""

    def __init__(self, s: CurveSystem):
        table = algebraic_intersections(s)
        self.names = list(s.names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.omega = [list(r) for r in table.matrix]

    def pairing(self, v) -> tuple[int, ...]:
        n = len(v)
        return tuple(sum(v[j] * self.omega[j][z] for j in range(n)) for z in range(n))

    def twist(self, v, c: str, k: int) -> list[int]:
        ci = self.index[c]
        w = list(v)
        w[ci] += k * sum(v[j] * self.omega[ci][j] for j in range(len(v)))
        return w

    def apply(self, word: TwistWord, y: str) -> list[int]:
        v = [0] * len(self.names)
        v[self.index[y]] = 1
        for c, e in word.letters:
            v = self.twist(v, c, e)
        return v

    def moves(self, word: TwistWord) -> bool:
        """True if the word provably moves some curve (its class changes even up to sign)."""
        for y in self.names:
            p = self.pairing(self.apply(word, y))
            q = self.pairing([1 if n == y else 0 for n in self.names])
            if p != q and p != tuple(-x for x in q):
                return True
        return False


@dataclass(frozen=True)
class ProbeOutcome:
    word: TwistWord
    moved: bool
    by: str  # "homology" or "geometry"


def probe_word(s: CurveSystem, word: TwistWord, hom: Homology | None = None, max_vertices: int = 20000) -> ProbeOutcome:
    hom = hom or Homology(s)
    if hom.moves(word):
        return ProbeOutcome(word, True, "homology")
    table = intersection_table(s)
    for y in s.names:
        d = s.diagram()
        d.pushoff(y, y + "#")
        images = [y + "#"]
        for c, e in word.letters:
            shear(d, c, images, e)
            if len(d.crossings) > max_vertices:
                raise TwistError(f"geometric probe of {word} exceeded {max_vertices} crossings")
            d, _ = reduce_diagram(d)
        counts = d.crossing_counts()
        if counts.get(frozenset((y, y + "#")), 0):
            return ProbeOutcome(word, True, "geometry")
        for z in s.names:
            if z != y and counts.get(frozenset((z, y + "#")), 0) != table[y, z]:
                return ProbeOutcome(word, True, "geometry")
    return ProbeOutcome(word, False, "geometry")


def relation_probe(s: CurveSystem, generators, L: int, max_vertices: int = 20000) -> list[TwistWord]:
    """Nonempty reduced words of length <= L in the twists that fix every curve of ``s``."""
    gens = [_name(g) for g in generators]
    if len(set(gens)) != len(gens):
        raise TwistError("generators must be pairwise distinct")
    if L < 1:
        raise TwistError("L must be >= 1")
    for g in gens:
        s.ref(g)
    hom = Homology(s)
    out = []
    for w in reduced_words(gens, L):
        word = TwistWord(w)
        if not probe_word(s, word, hom, max_vertices).moved:
            out.append(word)
    return out


# --- family report ----------------------------------------------------------


@dataclass
class FamilyReport:
    d: int
    genus: int
    base_intersection: int
    pairwise: IntersectionTable
    filling: bool
    faces: int
    formula_faces: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def oracle_pass(self) -> dict[str, bool]:
        return {c.name: c.ok for c in self.checks}

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "genus": self.genus,
            "base_intersection": self.base_intersection,
            "curves": list(self.pairwise.names),
            "pairwise": self.pairwise.as_lists(),
            "filling": self.filling,
            "faces": self.faces,
            "formula_faces": self.formula_faces,
            "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks],
            "ok": self.ok,
        }


def family_report(
    s: CurveSystem,
    a,
    b,
    d: int,
    k_max: int = 3,
    prop22_samples: int = 20,
    probe_length: int = 0,
    seed: int = 0,
) -> tuple[CurveSystem, FamilyReport]:
    a, b = _name(a), _name(b)
    fam = construct_family(s, a, b, d)
    g = s.ambient_genus
    base = intersection_number(s, a, b)
    table = intersection_table(fam)
    fill = is_filling(fam)
    formula = family_formula_faces(base, d, g)
    checks = []
    bad = [
        f"i(c{j + 1},c{k + 1})={table[f'c{j + 1}', f'c{k + 1}']}"
        for j, k in itertools.combinations(range(d), 2)
        if table[f"c{j + 1}", f"c{k + 1}"] != (k - j) * base * base
    ]
    checks.append(CheckResult("pairwise_formula", not bad, "; ".join(bad) or "i(cj,ck) = |j-k| i(a,b)^2"))
    if reduce_bigons(fam) is not fam:
        checks.append(CheckResult("minimal_position", False, "non-innermost bigon suspected"))
    else:
        checks.append(CheckResult("minimal_position", True, "no bigons"))
    checks.append(CheckResult("filling", fill.filling, f"connected={fill.connected} genus={fill.genus}"))
    checks.append(CheckResult("faces_formula", fill.face_count == formula, f"traced {fill.face_count}, formula {formula}"))
    euler = table.total() == 2 * g - 2 + fill.face_count
    checks.append(CheckResult("euler_identity", euler, f"{table.total()} = 2g - 2 + {fill.face_count}"))
    checks.extend(verify_cor23(s.restrict([a, b]), a, b, k_max))
    rng = random.Random(seed)
    pool = s.restrict([a, b])
    for _ in range(prop22_samples):
        x, y = rng.sample([a, b], 2)
        z = rng.choice([a, b])
        k = rng.choice([k for k in range(-k_max, k_max + 1) if k])
        checks.append(verify_prop22(pool, x, y, z, k))
    cert = stallings_rank([pingpong_generator(i) for i in range(d)])
    checks.append(CheckResult("stallings_rank", cert["is_basis"] and cert["rank"] == d, f"rank {cert['rank']} of {d} generators"))
    if probe_length:
        found = relation_probe(fam, fam.names, probe_length)
        checks.append(CheckResult("relation_probe", not found, f"L={probe_length}, suspicious={[str(w) for w in found]}"))
    rep = FamilyReport(d, g, base, table, fill.filling, fill.face_count, formula, checks)
    return fam, rep

