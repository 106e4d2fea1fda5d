"""Editable crossing diagrams.

A diagram stores every curve as the cyclic sequence of crossings it meets and,
for every crossing, the two curves through it plus the handedness of the
crossing.  This is equivalent to the dart description of a 4-valent map with
straight-ahead curves, but cheap to edit: surgery splices sequences.

Crossing ``v -> (c0, c1, s)``: ``s = +1`` iff ``c1`` crosses ``c0`` from its
right to its left.  Around the vertex the counterclockwise dart order is then
``c0 out, c1 out, c0 in, c1 in`` (``c0 out, c1 in, c0 in, c1 out`` for ``s = -1``).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .surface_map import CombMap


class DiagramError(ValueError):
    pass


class Diagram:
    def __init__(self, curves=None, crossings=None):
        self.curves: dict[str, list[int]] = {k: list(v) for k, v in (curves or {}).items()}
        self.crossings: dict[int, tuple[str, str, int]] = dict(crossings or {})
        self._next = max(self.crossings, default=-1) + 1

    def copy(self) -> Diagram:
        return Diagram(self.curves, self.crossings)

    def __repr__(self):
        lens = {k: len(v) for k, v in sorted(self.curves.items())}
        return f"Diagram(V={len(self.crossings)}, curves={lens})"

    def new_vertex(self, c0: str, c1: str, sign: int) -> int:
        v = self._next
        self._next += 1
        self.crossings[v] = (c0, c1, sign)
        return v

    def other(self, v: int, c: str) -> tuple[str, int]:
        """The curve meeting ``c`` at ``v`` and the sign with which it crosses ``c`` right to left."""
        c0, c1, s = self.crossings[v]
        if c == c0:
            return c1, s
        if c == c1:
            return c0, -s
        raise DiagramError(f"curve {c} does not pass through crossing {v}")

    def crossing_counts(self) -> Counter:
        return Counter(frozenset(x[:2]) for x in self.crossings.values())

    def algebraic_counts(self) -> Counter:
        """Signed counts keyed by ordered pair ``(x, y)``: how often ``y`` crosses ``x`` right to left minus left to right."""
        out = Counter()
        for c0, c1, s in self.crossings.values():
            out[c0, c1] += s
            out[c1, c0] -= s
        return out

    def rename(self, mapping: dict[str, str]) -> None:
        self.curves = {mapping.get(k, k): v for k, v in self.curves.items()}
        self.crossings = {
            v: (mapping.get(c0, c0), mapping.get(c1, c1), s) for v, (c0, c1, s) in self.crossings.items()
        }

    def remove_curve(self, name: str) -> None:
        gone = set(self.curves.pop(name))
        for other, seq in self.curves.items():
            if any(v in gone for v in seq):
                self.curves[other] = [v for v in seq if v not in gone]
        for v in gone:
            del self.crossings[v]

    def restrict(self, names) -> Diagram:
        out = self.copy()
        for n in list(out.curves):
            if n not in names:
                out.remove_curve(n)
        return out

    def splice(self, name: str, before=None, after=None, remove=()) -> None:
        before = before or {}
        after = after or {}
        seq = []
        for v in self.curves[name]:
            seq.extend(before.get(v, ()))
            if v not in remove:
                seq.append(v)
            seq.extend(after.get(v, ()))
        self.curves[name] = seq

    def pushoff(self, name: str, new_name: str) -> None:
        """Add a parallel copy of ``name`` on its left, crossing every curve it crosses."""
        if new_name in self.curves:
            raise DiagramError(f"curve {new_name} already present")
        before: dict[str, dict[int, list[int]]] = {}
        after: dict[str, dict[int, list[int]]] = {}
        copy_seq = []
        for v in self.curves[name]:
            z, s = self.other(v, name)
            w = self.new_vertex(new_name, z, s)
            copy_seq.append(w)
            # z passes from the right of `name` to its left when s = +1, so it meets the copy afterwards
            (after if s > 0 else before).setdefault(z, {})[v] = [w]
        for z in set(before) | set(after):
            self.splice(z, before.get(z), after.get(z))
        self.curves[new_name] = copy_seq

    def check(self) -> None:
        seen = Counter()
        for name, seq in self.curves.items():
            if len(set(seq)) != len(seq):
                raise DiagramError(f"curve {name} passes a crossing twice")
            for v in seq:
                if name not in self.crossings[v][:2]:
                    raise DiagramError(f"curve {name} lists crossing {v} it does not own")
                seen[v] += 1
        for v, (c0, c1, s) in self.crossings.items():
            if c0 == c1:
                raise DiagramError(f"self-crossing orbit at crossing {v}")
            if seen[v] != 2 or s not in (1, -1):
                raise DiagramError(f"malformed crossing {v}")


@dataclass
class Layout:
    """Dart numbering of a diagram: curves in sorted name order, vertices in first-visit order."""

    names: list[str]
    vids: list[int]  # new index -> diagram vertex id
    index: dict[int, int]
    sigma: list[int]
    alpha: list[int]
    out: dict[str, list[int]]  # per curve, the outgoing dart at each sequence position
    inc: dict[str, list[int]]  # per curve, the incoming dart at each sequence position

    def comb_map(self) -> CombMap:
        return CombMap(len(self.vids), tuple(self.sigma), tuple(self.alpha))

    def reps(self) -> dict[str, int]:
        return {n: self.out[n][0] for n in self.names}


def layout(diagram: Diagram) -> Layout:
    names = sorted(diagram.curves)
    index: dict[int, int] = {}
    first: list[str] = []
    vids: list[int] = []
    for n in names:
        if not diagram.curves[n]:
            raise DiagramError(f"curve {n} has no crossings")
        for v in diagram.curves[n]:
            if v not in index:
                index[v] = len(vids)
                vids.append(v)
                first.append(n)
    V = len(vids)
    sigma = [0] * (4 * V)
    alpha = [0] * (4 * V)
    out_at: dict[tuple[str, int], int] = {}
    in_at: dict[tuple[str, int], int] = {}
    for i, v in enumerate(vids):
        f = first[i]
        other, s = diagram.other(v, f)
        b = 4 * i
        out_at[f, i], in_at[f, i] = b, b + 2
        if s > 0:
            out_at[other, i], in_at[other, i] = b + 1, b + 3
        else:
            out_at[other, i], in_at[other, i] = b + 3, b + 1
        sigma[b], sigma[b + 1], sigma[b + 2], sigma[b + 3] = b + 1, b + 2, b + 3, b
    out: dict[str, list[int]] = {}
    inc: dict[str, list[int]] = {}
    for n in names:
        seq = [index[v] for v in diagram.curves[n]]
        out[n] = [out_at[n, i] for i in seq]
        inc[n] = [in_at[n, i] for i in seq]
        m = len(seq)
        for t in range(m):
            a, b = out[n][t], inc[n][(t + 1) % m]
            alpha[a], alpha[b] = b, a
    return Layout(names, vids, index, sigma, alpha, out, inc)
