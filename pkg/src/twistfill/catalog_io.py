"""Curve system files (CSF) and the seed catalog of filling pairs.

A CSF document is line-oriented ASCII with ``#`` comments::

    csf 1
    genus 2
    vertices 4
    sigma
    0 1 2 3          # one line per vertex, darts in counterclockwise order
    ...
    alpha
    0 6              # one line per edge
    ...
    curves 2
    a 0              # name and a representative dart
    b 1

Curves are recovered from the map by straight-ahead traversal, so only one
dart per curve is stored.
"""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .curve_system import (
    CurveSystem,
    CurveSystemError,
    decompose,
    intersection_table,
    is_filling,
    reduce_bigons,
)
from .surface_map import CombMap, validate_map

VERSION = 1


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class CatalogError(ValueError):
    pass


def _syntax(line: int, what: str) -> ParseError:
    err = ParseError(f"syntax error at line {line}: {what}")
    err.line = line
    return err


class _Lines:
    def __init__(self, text: str):
        self.items = []
        raw = text.split("\n")
        for no, line in enumerate(raw, 1):
            body = line.split("#", 1)[0].strip()
            if body:
                self.items.append((no, body.split()))
        self.pos = 0
        self.eof_line = len(raw) + (0 if text.endswith("\n") else 1)

    def next(self, what: str):
        if self.pos >= len(self.items):
            raise _syntax(self.eof_line, f"unexpected end of file, expected {what}")
        item = self.items[self.pos]
        self.pos += 1
        return item

    def keyword(self, key: str, nargs: int):
        no, toks = self.next(key)
        if toks[0] != key or len(toks) != 1 + nargs:
            raise _syntax(no, f"expected '{key}'" + (" <int>" * nargs))
        return no, [_int(no, t) for t in toks[1:]]


def _int(no: int, tok: str) -> int:
    if not tok.isdigit():
        raise _syntax(no, f"expected a nonnegative integer, got {tok!r}")
    return int(tok)


def parse_document(text: str):
    """Parse CSF text into ``(genus, CombMap, [(name, dart), ...])`` without topological checks."""
    if any(ord(ch) > 127 for ch in text):
        raise ParseError("non-ASCII character in file")
    lines = _Lines(text)
    no, (version,) = lines.keyword("csf", 1)
    if version != VERSION:
        raise ParseError(f"unsupported csf version {version}", no)
    _, (genus,) = lines.keyword("genus", 1)
    _, (V,) = lines.keyword("vertices", 1)
    n = 4 * V
    seen_at: dict[int, int] = {}

    def dart(no: int, tok: str) -> int:
        d = _int(no, tok)
        if d >= n:
            raise ParseError(f"dart {d} out of range for {V} vertices", no)
        return d

    lines.keyword("sigma", 0)
    sigma = [-1] * n
    for _ in range(V):
        no, toks = lines.next("a sigma line")
        if len(toks) != 4:
            raise _syntax(no, "a sigma line lists exactly 4 darts")
        ds = [dart(no, t) for t in toks]
        for i, d in enumerate(ds):
            if d in seen_at:
                raise ParseError(f"dart {d} appears twice in sigma (first at line {seen_at[d]})", no)
            seen_at[d] = no
            sigma[d] = ds[(i + 1) % 4]
    lines.keyword("alpha", 0)
    alpha = [-1] * n
    for _ in range(2 * V):
        no, toks = lines.next("an alpha pair")
        if len(toks) != 2:
            raise _syntax(no, "an alpha line lists exactly 2 darts")
        x, y = dart(no, toks[0]), dart(no, toks[1])
        if x == y:
            raise ParseError(f"alpha not fixed-point-free (dart {x})", no)
        for d in (x, y):
            if alpha[d] != -1:
                raise ParseError(f"dart {d} paired twice in alpha", no)
        alpha[x], alpha[y] = y, x
    _, (k,) = lines.keyword("curves", 1)
    refs = []
    for _ in range(k):
        no, toks = lines.next("a curve line")
        if len(toks) != 2:
            raise _syntax(no, "a curve line is '<name> <dart>'")
        refs.append((toks[0], dart(no, toks[1])))
    if lines.pos < len(lines.items):
        no, _ = lines.items[lines.pos]
        raise _syntax(no, "trailing content")
    return genus, CombMap(V, tuple(sigma), tuple(alpha)), refs


def parse_csf(text: str) -> CurveSystem:
    genus, m, refs = parse_document(text)
    bad = validate_map(m)
    if bad:
        raise ParseError(bad)
    try:
        return decompose(m, genus, dict(refs))
    except CurveSystemError as exc:
        raise ParseError(str(exc)) from None


def serialize_csf(s: CurveSystem, comment: str | None = None) -> str:
    """Canonical text: the system's map is already in canonical layout, so this is a direct dump."""
    m = s.map
    out = []
    if comment:
        out += [f"# {line}" for line in comment.splitlines()]
    out += [f"csf {VERSION}", f"genus {s.ambient_genus}", f"vertices {m.vertex_count}", "sigma"]
    for v in range(m.vertex_count):
        d = 4 * v
        cyc = [d]
        while m.sigma[cyc[-1]] != d:
            cyc.append(m.sigma[cyc[-1]])
        out.append(" ".join(map(str, cyc)))
    out.append("alpha")
    for d in range(m.dart_count):
        if d < m.alpha[d]:
            out.append(f"{d} {m.alpha[d]}")
    out.append(f"curves {len(s.curves)}")
    for c in sorted(s.curves, key=lambda c: c.name):
        out.append(f"{c.name} {c.representative_dart}")
    return "\n".join(out) + "\n"


def read_csf(path) -> CurveSystem:
    return parse_csf(Path(path).read_text(encoding="ascii"))


def write_csf(s: CurveSystem, path, comment: str | None = None) -> None:
    Path(path).write_bytes(serialize_csf(s, comment).encode("ascii"))


# --- catalog --------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    genus: int
    expected: tuple[tuple[str, str, int], ...]  # (x, y, i(x, y))
    faces: int
    note: str
    filename: str
    system: CurveSystem | None = None

    @property
    def filling_pair(self) -> tuple[str, str]:
        return self.expected[0][0], self.expected[0][1]


SEEDS = (
    CatalogEntry(
        "g2_i4",
        2,
        (("a", "b", 4),),
        2,
        "filling pair on the genus-2 surface with four crossings; found by exhaustive search and verified",
        "g2_i4.csf",
    ),
    CatalogEntry(
        "g3_i5",
        3,
        (("a", "b", 5),),
        1,
        "filling pair on the genus-3 surface with five crossings and a single complementary disc",
        "g3_i5.csf",
    ),
)

FIXTURES = {"bigon_fixture": "bigon_fixture.csf"}  # deliberately not in minimal position


def data_text(filename: str) -> str:
    return resources.files("twistfill").joinpath("data").joinpath(filename).read_text(encoding="ascii")


def verify_entry(entry: CatalogEntry, s: CurveSystem) -> str | None:
    if s.ambient_genus != entry.genus:
        return f"declared genus {s.ambient_genus} differs from {entry.genus}"
    rep = is_filling(s)
    if not rep.filling:
        return "curves do not fill"
    if rep.genus != entry.genus:
        return f"filled surface has genus {rep.genus}, expected {entry.genus}"
    if rep.face_count != entry.faces:
        return f"{rep.face_count} complementary discs, expected {entry.faces}"
    table = intersection_table(s)
    for x, y, val in entry.expected:
        try:
            got = table[x, y]
        except ValueError:
            return f"missing curve {x} or {y}"
        if got != val:
            return f"i({x},{y}) = {got}, expected {val}"
    if table.total() != 2 * entry.genus - 2 + rep.face_count:
        return "intersection total violates the Euler identity"
    if reduce_bigons(s) is not s:
        return "stored diagram is not in minimal position"
    return None


def load_entry(entry: CatalogEntry, text: str | None = None) -> CatalogEntry:
    try:
        s = parse_csf(data_text(entry.filename) if text is None else text)
    except (ParseError, OSError) as exc:
        raise CatalogError(f"catalog entry failed verification: {entry.id}, {exc}") from None
    bad = verify_entry(entry, s)
    if bad:
        raise CatalogError(f"catalog entry failed verification: {entry.id}, {bad}")
    return CatalogEntry(entry.id, entry.genus, entry.expected, entry.faces, entry.note, entry.filename, s)


def load_catalog() -> list[CatalogEntry]:
    return [load_entry(e) for e in SEEDS]


def catalog_ids() -> list[str]:
    return [e.id for e in SEEDS] + sorted(FIXTURES)


def get_system(name: str) -> CurveSystem:
    """A catalog system by id (verified), a fixture by id, or a CSF file by path."""
    for e in SEEDS:
        if e.id == name:
            return load_entry(e).system
    if name in FIXTURES:
        return parse_csf(data_text(FIXTURES[name]))
    return read_csf(name)
