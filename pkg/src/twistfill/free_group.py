"""Words in the free group on ``f`` and ``h``, ping-pong sets and Stallings foldings.

Words are kept as run-length tuples ``((letter, exponent), ...)`` with nonzero
exponents and no two adjacent runs on the same letter, which is exactly the
freely reduced form in a free group of rank two.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

LETTERS = ("f", "h")

_TOKEN = re.compile(r"^([A-Za-z]\w*)(?:\^\(?(-?\d+)\)?)?$")


def _push(runs: list[tuple[str, int]], letter: str, e: int) -> None:
    if e == 0:
        return
    if runs and runs[-1][0] == letter:
        total = runs[-1][1] + e
        runs.pop()
        if total:
            runs.append((letter, total))
    else:
        runs.append((letter, e))


@dataclass(frozen=True)
class ReducedWord:
    runs: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        out: list[tuple[str, int]] = []
        for letter, e in self.runs:
            _push(out, letter, e)
        object.__setattr__(self, "runs", tuple(out))

    @classmethod
    def parse(cls, text: str) -> ReducedWord:
        """Parse ``"h^-2 f h^2"``; ``F`` and ``H`` are accepted as inverse letters, ``1`` as the identity."""
        runs = []
        for tok in text.replace("*", " ").split():
            if tok in ("1", "e"):
                continue
            m = _TOKEN.match(tok)
            if not m:
                raise ValueError(f"bad token {tok!r}")
            name, e = m.group(1), int(m.group(2) or 1)
            if name in ("F", "H"):
                name, e = name.lower(), -e
            if name not in LETTERS:
                raise ValueError(f"unknown letter {name!r}")
            runs.append((name, e))
        return cls(tuple(runs))

    def letters(self) -> list[tuple[str, int]]:
        return [(x, 1 if e > 0 else -1) for x, e in self.runs for _ in range(abs(e))]

    def __len__(self):
        return sum(abs(e) for _, e in self.runs)

    def __bool__(self):
        return bool(self.runs)

    def __mul__(self, other: ReducedWord) -> ReducedWord:
        runs = list(self.runs)
        for letter, e in other.runs:
            _push(runs, letter, e)
        return ReducedWord._raw(runs)

    def __pow__(self, k: int) -> ReducedWord:
        base = self if k >= 0 else self.inverse()
        out = ReducedWord()
        for _ in range(abs(k)):
            out = out * base
        return out

    def inverse(self) -> ReducedWord:
        return ReducedWord._raw([(x, -e) for x, e in reversed(self.runs)])

    @classmethod
    def _raw(cls, runs) -> ReducedWord:
        w = object.__new__(cls)
        object.__setattr__(w, "runs", tuple(runs))
        return w

    def __str__(self):
        if not self.runs:
            return "1"
        return " ".join(x if e == 1 else f"{x}^{e}" for x, e in self.runs)


def reduce(w) -> ReducedWord:
    """Freely reduce a word given as text, a ReducedWord, or a sequence of letters / (letter, exponent) pairs."""
    if isinstance(w, ReducedWord):
        return ReducedWord(w.runs)
    if isinstance(w, str):
        return ReducedWord.parse(w)
    runs = []
    for item in w:
        if isinstance(item, str):
            runs.extend(ReducedWord.parse(item).runs)
        else:
            runs.append((item[0], int(item[1])))
    return ReducedWord(tuple(runs))


def pingpong_generator(i: int) -> ReducedWord:
    """``g_i = h^-i f h^i``."""
    if i < 0:
        raise ValueError("generator index must be >= 0")
    return ReducedWord((("h", -i), ("f", 1), ("h", i)))


def in_pingpong_set(w: ReducedWord, n: int) -> bool:
    """Does ``w`` start with exactly ``n`` letters ``h^-1`` followed by ``f`` or ``f^-1``?"""
    r = w.runs
    if n == 0:
        return bool(r) and r[0][0] == "f"
    return len(r) >= 2 and r[0] == ("h", -n) and r[1][0] == "f"


def all_reduced_words(L: int):
    """Every reduced word of length at most ``L``, shortest first, in a fixed order."""
    alphabet = [("f", 1), ("f", -1), ("h", 1), ("h", -1)]
    layer = [()]
    yield ReducedWord()
    for _ in range(L):
        nxt = []
        for word in layer:
            for a in alphabet:
                if word and word[-1] == (a[0], -a[1]):
                    continue
                nxt.append(word + (a,))
        for word in nxt:
            yield ReducedWord(word)
        layer = nxt


@dataclass
class PingPongResult:
    ok: bool
    checked: int
    witness: tuple | None = None  # (i, j, k, w, g_i^k w)

    def __str__(self):
        if self.ok:
            return f"ping-pong inclusion holds on {self.checked} cases"
        i, j, k, w, img = self.witness
        return f"g_{i}^{k} ({w}) = {img} is not in X_{i}"


def pingpong_step(i: int, j: int, k: int, w: ReducedWord) -> ReducedWord:
    """``g_i^k w`` for ``w`` in ``X_j``; only defined for ``i != j``."""
    if i == j:
        raise ValueError("ping-pong inclusion needs i != j")
    if k == 0:
        raise ValueError("exponent must be nonzero")
    if not in_pingpong_set(w, j):
        raise ValueError(f"{w} is not in X_{j}")
    return (pingpong_generator(i) ** k) * w


def check_pingpong_inclusion(d: int, k_max: int, L: int) -> PingPongResult:
    if d < 2 or k_max < 1 or L < 1:
        raise ValueError("need d >= 2, k_max >= 1, L >= 1")
    members: list[list[ReducedWord]] = [[] for _ in range(d)]
    for w in all_reduced_words(L):
        for j in range(d):
            if in_pingpong_set(w, j):
                members[j].append(w)
                break
    powers = {(i, k): pingpong_generator(i) ** k for i in range(d) for k in range(-k_max, k_max + 1) if k}
    checked = 0
    for i in range(d):
        for j in range(d):
            if i == j:
                continue
            for k in range(-k_max, k_max + 1):
                if k == 0:
                    continue
                g = powers[i, k]
                for w in members[j]:
                    img = g * w
                    checked += 1
                    if not in_pingpong_set(img, i):
                        return PingPongResult(False, checked, (i, j, k, w, img))
    return PingPongResult(True, checked)


@dataclass
class FoldingGraph:
    """Labelled graph with a base state; edge ``(u, x, v)`` reads letter ``x`` from ``u`` to ``v``."""

    states: set[int]
    edges: set[tuple[int, str, int]]
    base: int = 0
    folded: bool = False

    @classmethod
    def wedge(cls, generators) -> FoldingGraph:
        edges = set()
        states = {0}
        nxt = 1
        for g in generators:
            path = g.letters()
            cur = 0
            for t, (x, e) in enumerate(path):
                if t == len(path) - 1:
                    tgt = 0
                else:
                    tgt = nxt
                    nxt += 1
                    states.add(tgt)
                edges.add((cur, x, tgt) if e > 0 else (tgt, x, cur))
                cur = tgt
        return cls(states, edges)

    def fold(self) -> FoldingGraph:
        parent = {s: s for s in self.states}

        def find(s):
            while parent[s] != s:
                parent[s] = parent[parent[s]]
                s = parent[s]
            return s

        def union(a, b):
            a, b = find(a), find(b)
            if a != b:
                # keep the base state as representative
                if b == self.base or (a != self.base and b < a):
                    a, b = b, a
                parent[b] = a
                return True
            return False

        edges = set(self.edges)
        while True:
            seen: dict[tuple[int, str, int], int] = {}
            merged = False
            for u, x, v in sorted(edges):
                u, v = find(u), find(v)
                for key, val in (((u, x, 1), v), ((v, x, -1), u)):
                    prev = seen.get(key)
                    if prev is None:
                        seen[key] = val
                    elif find(prev) != find(val):
                        union(prev, val)
                        merged = True
            edges = {(find(u), x, find(v)) for u, x, v in edges}
            if not merged:
                break
        return FoldingGraph({find(s) for s in self.states}, edges, find(self.base), True)

    def core(self) -> FoldingGraph:
        """Prune non-base states of degree one until none is left."""
        edges = set(self.edges)
        states = set(self.states)
        while True:
            deg = {s: 0 for s in states}
            for u, _, v in edges:
                deg[u] += 1
                deg[v] += 1
            leaves = {s for s, k in deg.items() if k <= 1 and s != self.base}
            if not leaves:
                break
            states -= leaves
            edges = {e for e in edges if e[0] not in leaves and e[2] not in leaves}
        return FoldingGraph(states, edges, self.base, self.folded)

    def rank(self) -> int:
        return len(self.edges) - len(self.states) + 1


def stallings_rank(generators) -> dict:
    gens = [reduce(g) for g in generators]
    if not gens:
        raise ValueError("empty generator list")
    if any(len(g) == 0 for g in gens):
        raise ValueError("generators must be nonempty")
    graph = FoldingGraph.wedge(gens).fold().core()
    r = graph.rank()
    return {"rank": r, "is_basis": r == len(gens), "states": len(graph.states), "edges": len(graph.edges)}


def _abstract_str(word) -> str:
    return " ".join(f"G{i}" if e == 1 else f"G{i}^-1" for i, e in word)


def _images(d: int, gens) -> dict:
    # letters: +1/-1 for f, +2/-2 for h
    code = {"f": 1, "h": 2}
    images = {}
    for i, w in enumerate(gens):
        g = [code[x] * e for x, e in w.letters()]
        images[i, 1] = g
        images[i, -1] = [-x for x in reversed(g)]
    return images


def _search_setup(d: int, L: int, generators):
    if d < 2 or L < 1:
        raise ValueError("need d >= 2 and L >= 1")
    gens = [pingpong_generator(i) for i in range(d)] if generators is None else [reduce(g) for g in generators]
    if len(gens) != d:
        raise ValueError("need exactly d generators")
    return _images(d, gens)


def _dfs_order(word) -> tuple:
    return tuple((i, 0 if e == 1 else 1) for i, e in word)


def relation_search_abstract(d: int, L: int, generators=None) -> list[str]:
    """Reduced words in ``G_0..G_{d-1}`` of length at most ``L`` whose image under ``G_i -> g_i`` is trivial.

    ``generators`` replaces the ``g_i`` (used to test the search itself).
    Meet in the middle: a reduced word ``w`` of length ``n`` splits uniquely as
    ``u v`` with ``|u| = ceil(n/2)``, and ``w`` is trivial iff ``u`` and ``v^-1``
    have the same image; the split point is reduced iff ``u`` and ``v^-1`` end
    in different letters.  Only words of length ``ceil(L/2)`` are enumerated.
    """
    images = _search_setup(d, L, generators)
    half = (L + 1) // 2
    letters = [(i, e) for i in range(d) for e in (1, -1)]
    buckets: dict[tuple, list[tuple]] = {}
    layer = [((), ())]
    for depth in range(half + 1):
        for word, img in layer:
            buckets.setdefault(img, []).append(word)
        if depth == half:
            break
        nxt = []
        for word, img in layer:
            for i, e in letters:
                if word and word[-1] == (i, -e):
                    continue
                stack = list(img)
                for x in images[i, e]:
                    if stack and stack[-1] == -x:
                        stack.pop()
                    else:
                        stack.append(x)
                nxt.append((word + ((i, e),), tuple(stack)))
        layer = nxt
    found = []
    for group in buckets.values():
        if len(group) < 2 and group != [()]:
            continue
        for u in group:
            if not u:
                continue
            for t in group:
                if len(t) not in (len(u) - 1, len(u)) or len(u) + len(t) > L:
                    continue
                if t and t[-1] == u[-1]:
                    continue
                found.append(u + tuple((i, -e) for i, e in reversed(t)))
    found.sort(key=lambda w: _dfs_order(w))
    return [_abstract_str(w) for w in found]


def relation_search_dfs(d: int, L: int, generators=None) -> list[str]:
    """Plain depth-first version of :func:`relation_search_abstract`; slower, kept as a cross-check."""
    images = _search_setup(d, L, generators)
    stack: list[int] = []
    found: list[str] = []
    word: list[tuple[int, int]] = []

    def push(letters):
        log = []
        for x in letters:
            if stack and stack[-1] == -x:
                log.append(stack.pop())
            else:
                stack.append(x)
                log.append(None)
        return log

    def undo(log):
        for item in reversed(log):
            if item is None:
                stack.pop()
            else:
                stack.append(item)

    def walk(depth):
        for i in range(d):
            for e in (1, -1):
                if word and word[-1] == (i, -e):
                    continue
                word.append((i, e))
                log = push(images[i, e])
                if not stack:
                    found.append(_abstract_str(word))
                if depth + 1 < L:
                    walk(depth + 1)
                undo(log)
                word.pop()

    walk(0)
    return found
