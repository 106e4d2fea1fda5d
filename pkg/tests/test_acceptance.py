"""Acceptance criteria, one test each.

Run with ``pytest tests/test_acceptance.py -v``; a PASS/FAIL line per criterion
is printed in the terminal summary.  ``python3 tests/test_acceptance.py`` runs
the same checks without pytest.
"""
from __future__ import annotations

import random
import time
from functools import lru_cache

from twistfill import twist_engine
from twistfill.catalog_io import SEEDS, data_text, get_system, load_catalog, parse_csf, serialize_csf
from twistfill.curve_system import intersection_table, is_filling, reduce_bigons
from twistfill.free_group import (
    check_pingpong_inclusion,
    pingpong_generator,
    relation_search_abstract,
    stallings_rank,
)
from twistfill.twist_engine import (
    TwistWord,
    construct_family,
    reduced_words,
    relation_probe,
    verify_conjugation,
    verify_cor23,
    verify_prop22,
)

SEED = 20240601
BASE = 4  # i(a, b) on g2_i4


@lru_cache(maxsize=None)
def g2():
    return get_system("g2_i4")


@lru_cache(maxsize=None)
def family(d: int):
    return construct_family(g2(), "a", "b", d)


def criterion_1():
    twist_engine._image_row.cache_clear()
    t = time.perf_counter()
    checks = verify_cor23(g2(), "a", "b", 3)
    elapsed = time.perf_counter() - t
    bad = [c.detail for c in checks if not c.ok]
    ok = not bad and len(checks) == 7 and elapsed < 10
    return ok, f"k in [-3, 3], {len(checks) - len(bad)}/7 exact, {elapsed:.2f} s" + (f"; {bad[0]}" if bad else "")


def criterion_2():
    problems = []
    for d in (2, 3, 4, 5):
        fam = family(d)
        rep = is_filling(fam)
        if not (rep.filling and rep.connected and rep.genus == 2):
            problems.append(f"d={d}: {rep}")
        table = intersection_table(fam)
        for j in range(d):
            for k in range(j + 1, d):
                x, y = fam.names[j], fam.names[k]
                if table[x, y] != abs(j - k) * BASE * BASE:
                    problems.append(f"d={d}: i({x},{y}) = {table[x, y]}")
    return not problems, "d = 2..5 filling, connected, genus 2, i = 16|j-k|" if not problems else problems[0]


def criterion_3():
    want = {2: 14, 3: 62, 4: 158, 5: 318}
    got = {d: is_filling(family(d)).face_count for d in want}
    formula = {d: 16 * d * (d - 1) * (d + 1) // 6 - 2 for d in want}
    ok = got == want == formula
    return ok, f"faces {got}, expected {want}"


def _euler_ok(s) -> tuple[bool, str]:
    rep = is_filling(s)
    table = intersection_table(s)
    total = sum(table[x, y] for i, x in enumerate(s.names) for y in s.names[i + 1:])
    want = 2 * rep.genus - 2 + rep.face_count
    return rep.filling and total == want, f"{total} vs {want}"


def criterion_4():
    systems = {e.id: e.system for e in load_catalog()}
    systems.update({f"family d={d}": family(d) for d in (2, 3, 4, 5)})
    bad = []
    for name, s in systems.items():
        ok, detail = _euler_ok(s)
        if not ok:
            bad.append(f"{name}: {detail}")
    return not bad, f"{len(systems)} filling systems" if not bad else bad[0]


def criterion_5():
    rng = random.Random(SEED)
    systems = [g2(), get_system("g3_i5"), family(3)]
    ks = [k for k in range(-3, 4) if k]
    failures = []
    for _ in range(200):
        s = rng.choice(systems)
        a, b = rng.sample(s.names, 2)
        c = rng.choice(s.names)
        res = verify_prop22(s, a, b, c, rng.choice(ks))
        if not res.ok:
            failures.append(f"{res.name}: {res.detail}")
    return not failures, "200 cells, 0 violations" if not failures else f"{len(failures)} violations, e.g. {failures[0]}"


def criterion_6():
    rng = random.Random(SEED)
    words = [w for w in reduced_words(["a", "b"], 3) if w]
    sample = rng.sample(words, 20)
    bad = []
    t = time.perf_counter()
    for w in sample:
        axis = rng.choice(["a", "b"])
        f = TwistWord(w)
        if not verify_conjugation(g2(), f, axis).ok:
            bad.append(f"f = {f}, axis {axis}")
    elapsed = time.perf_counter() - t
    return not bad, f"20 words, rows, face counts and per-pair face-degree multisets agree, {elapsed:.1f} s" if not bad else bad[0]


def criterion_7():
    t = time.perf_counter()
    problems = []
    for d in range(2, 11):
        cert = stallings_rank([pingpong_generator(i) for i in range(d)])
        if cert["rank"] != d or not cert["is_basis"]:
            problems.append(f"stallings d={d}: {cert}")
    for d in range(2, 7):
        pp = check_pingpong_inclusion(d, 3, 8)
        if not pp.ok:
            problems.append(f"pingpong d={d}: {pp}")
    for d in range(2, 11):
        rel = relation_search_abstract(d, 6)
        if rel:
            problems.append(f"relation d={d}: {rel[0]}")
    elapsed = time.perf_counter() - t
    ok = not problems and elapsed < 60
    return ok, f"rank d for d = 2..10, ping-pong d <= 6, no relation of length <= 6 for d = 2..10, {elapsed:.1f} s" + (
        f"; {problems[0]}" if problems else ""
    )


def criterion_8():
    found = {}
    for d, L in ((2, 6), (3, 4)):
        fam = family(d)
        found[d] = relation_probe(fam, fam.names, L)
    ok = not found[2] and not found[3]
    detail = ", ".join(f"d={d}: {len(v)} fixing words" for d, v in found.items())
    return ok, detail


def criterion_9():
    problems = []
    for entry in SEEDS:
        text = data_text(entry.filename)
        s = parse_csf(text)
        if serialize_csf(s) != text:
            problems.append(f"{entry.id}: serialize(parse) differs")
        if reduce_bigons(s) is not s:
            problems.append(f"{entry.id}: not a reduce_bigons fixed point")
    return not problems, f"{len(SEEDS)} goldens" if not problems else problems[0]


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 10)}


def _run(n: int, acceptance):
    try:
        ok, detail = CRITERIA[n]()
    except Exception as exc:
        acceptance(n, False, f"{type(exc).__name__}: {exc}")
        raise
    acceptance(n, ok, detail)
    assert ok, detail


def test_criterion_1_twist_intersection_exactness(acceptance):
    _run(1, acceptance)


def test_criterion_2_family_pipeline(acceptance):
    _run(2, acceptance)


def test_criterion_3_face_counts(acceptance):
    _run(3, acceptance)


def test_criterion_4_euler_identity(acceptance):
    _run(4, acceptance)


def test_criterion_5_twist_inequality_cells(acceptance):
    _run(5, acceptance)


def test_criterion_6_conjugation(acceptance):
    _run(6, acceptance)


def test_criterion_7_free_group_certificates(acceptance):
    _run(7, acceptance)


def test_criterion_8_relation_probe(acceptance):
    _run(8, acceptance)


def test_criterion_9_round_trip(acceptance):
    _run(9, acceptance)


if __name__ == "__main__":
    failed = 0
    for n, check in CRITERIA.items():
        try:
            ok, detail = check()
        except Exception as exc:  # report and keep going
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        failed += not ok
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}", flush=True)
    raise SystemExit(1 if failed else 0)
