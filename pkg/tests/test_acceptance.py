"""Acceptance checks, one per criterion; each prints a single PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""

from __future__ import annotations

import multiprocessing as mp
import queue
import random
import sys
import time
from itertools import product

import pytest

from lefschetz import (
    IdentityKind,
    MonomialIdeal,
    build_mult_matrix,
    counting_identity_check,
    family_J,
    family_mixed,
    family_squares,
    family_uniform,
    h_vector,
    hilbert_inequality_check,
    kernel_basis,
    map_rank,
    parse_ideal,
    rank,
    socle,
    verify_witness,
    wlp_check,
    wlp_verdict,
    witness_prop,
    witness_thmA,
    witness_thmB,
    witness_thmC,
)
from lefschetz.engine import max_dim_from_env

try:
    from . import oracles
except ImportError:  # executed as a script
    import oracles

SEED = 20240601


def _timed(limit, fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    secs = time.perf_counter() - t0
    if secs >= limit:
        ok = False
        detail += f"; took {secs:.1f}s, limit {limit}s"
    else:
        detail += f"; {secs:.2f}s"
    return ok, detail


# --------------------------------------------------------------------------


def c1():
    h = h_vector(family_mixed((4, 4, 3, 3, 2), 5)).values
    return h == (1, 5, 14, 28, 43, 52, 49, 35, 18, 6, 1), f"h = {h}"


def c2():
    I = family_mixed((4, 4, 3, 3, 2), 5)
    rep = wlp_check(I, 2)
    row = rep.row(3)
    chk = verify_witness(I, 2, witness_thmB((4, 4, 3, 3, 2), 5))
    rank0 = map_rank(I, 3, 0)
    ok = rep.first_failure == 3 and row.rank < row.h_t == 28 and chk.all_true and rank0 == 28
    return ok, (f"char 2: first failure t={rep.first_failure}, rank {row.rank} < h_3 = {row.h_t}; "
                f"cubic witness {chk.as_tuple()}; char 0 rank {rank0}")


def c3():
    I = family_J(4, 5)
    h = h_vector(I).values
    rep = wlp_check(I, 2)
    chk = verify_witness(I, 2, witness_thmC(4, 5))
    ok = h == (1, 4, 10, 20, 35, 40, 26, 8, 1) and rep.first_failure == 4 and chk.all_true
    return ok, f"h = {h}; char 2 first failure t={rep.first_failure}; witness {chk.as_tuple()}"


def _sample(rng, values, r, n, exclude=()):
    pool = [a for a in product(values, repeat=r) if a not in exclude]
    return rng.sample(pool, n)


def c4():
    rng = random.Random(SEED)
    checked = skipped = 0
    bad = []
    for r in (5, 6, 7):
        for d in range(4, r + 1):
            for alphas in _sample(rng, (2, 3), r, 20):
                I = family_mixed(alphas, d)
                if not hilbert_inequality_check(I, 2):
                    skipped += 1
                    continue
                chk = verify_witness(I, 3, witness_thmA(alphas, d))
                rep = wlp_verdict(I, 3)
                checked += 1
                if not chk.all_true or rep.holds:
                    bad.append((alphas, d, chk.as_tuple(), rep.verdict.value))
    return not bad, (f"{checked - len(bad)}/{checked} samples verified and failing at char 3, "
                     f"{skipped} skipped with h_2 > h_3; bad: {bad}")


def c5():
    rng = random.Random(SEED + 1)
    checked = 0
    bad = []
    for r in (5, 6, 7):
        for d in range(5, r + 1):
            for alphas in _sample(rng, (2, 3, 4), r, 20, exclude={(2,) * r}):
                I = family_mixed(alphas, d)
                chk = verify_witness(I, 2, witness_thmB(alphas, d))
                rep = wlp_verdict(I, 2)
                checked += 1
                if not chk.all_true or rep.holds:
                    bad.append(f"alphas={alphas} d={d}: witness {chk.as_tuple()} with h_3={chk.h_t}, "
                               f"h_4={chk.h_t1}; WLP {rep.verdict.value} (first failure t={rep.first_failure})")
    return not bad, f"{checked - len(bad)}/{checked} samples verified and failing at char 2; bad: {bad}"


def c6():
    bad = []
    for r, alpha in product((4, 5), (5, 6, 7)):
        I = family_J(r, alpha)
        ineq = hilbert_inequality_check(I, alpha - 1)
        chk = verify_witness(I, 2, witness_thmC(r, alpha))
        rep = wlp_check(I, 2, witness=False)
        row = rep.row(alpha - 1)
        if not (ineq and chk.all_true and not row.maximal):
            bad.append((r, alpha, ineq, chk.as_tuple(), rep.first_failure))
    return not bad, f"6 cells, bad: {bad}"


def c7():
    findings, bad = [], []
    cells = 0
    for r in range(4, 11):
        half = -(-r // 2)
        for d in range(3, min(r, 6) + 1):
            I = family_squares(r, d)
            s = socle(I)
            if not (s.is_level and s.socle_degree == d - 1):
                bad.append((r, d, "not level"))
            for p in (2, 3, 5, 7, 11, 13):
                cells += 1
                if p - 1 <= min(half, d - 2):
                    chk = verify_witness(I, p, witness_prop(r, d, p - 1))
                    rep = wlp_check(I, p, witness=False)
                    if chk.all_true and not rep.holds:
                        continue
                    if chk.nonzero and chk.annihilated and not chk.inequality and rep.holds:
                        # kernel element sits where h_t > h_{t+1}; ranks are maximal
                        findings.append(f"(r={r}, d={d}, p={p}): witness {chk.as_tuple()}, "
                                        f"h_{p - 1}={chk.h_t} > h_{p}={chk.h_t1}, WLP holds")
                    else:
                        bad.append((r, d, p, chk.as_tuple(), rep.verdict.value))
                elif p > half + 1:
                    if not wlp_check(I, p, witness=False).holds:
                        bad.append((r, d, p, "expected to hold"))
            cells += 1
            if not wlp_check(I, 0, witness=False).holds:
                bad.append((r, d, 0, "expected to hold"))
    detail = f"{cells} cells, unexplained: {bad}"
    if findings:
        detail += "; FINDINGS: " + "; ".join(findings)
    return not bad, detail


def c8():
    bad = []
    I2 = parse_ideal("x1^2, x2^2", 2)
    for p in (0, 2, 3, 5):
        if not wlp_check(I2, p).holds:
            bad.append(("(x^2,y^2)", p))
    for p in (2, 3, 5):
        I = parse_ideal(f"x1^{p}, x2^{p}, x3^{p}", 3)
        if wlp_check(I, p).holds:
            bad.append((f"(x^{p},y^{p},z^{p})", p))
        if not wlp_check(I, 0).holds:
            bad.append((f"(x^{p},y^{p},z^{p})", 0))
    return not bad, f"bad: {bad}"


def c9():
    n = 0
    ok = True
    for r in range(3, 13):
        ok &= counting_identity_check(r, IdentityKind.THM_A) and counting_identity_check(r, IdentityKind.THM_B)
        n += 2
        if r >= 4:
            ok &= counting_identity_check(r, IdentityKind.THM_C)
            n += 1
    for r in range(2, 13):
        for i in range(1, -(-r // 2) + 1):
            if i + 1 <= r:
                ok &= counting_identity_check(r, IdentityKind.PROP, i=i)
                n += 1
    return bool(ok), f"{n} identities"


def _random_ideal(rng):
    r = rng.randint(1, 4)
    gens = [tuple(rng.randint(1, 4) if j == i else 0 for j in range(r)) for i in range(r)]
    for _ in range(rng.randint(0, 4)):
        g = tuple(rng.randint(0, 4) for _ in range(r))
        if sum(g):
            gens.append(g)
    return MonomialIdeal.from_generators(r, gens)


def c10():
    rng = random.Random(SEED + 2)
    maps = vectors = 0
    bad = []
    for _ in range(100):
        I = _random_ideal(rng)
        gens = [tuple(g) for g in I.generators]
        e = h_vector(I).socle_degree
        for t in range(e):
            ref = oracles.mult_matrix(I.r, t, gens)
            for p in (0, 2, 3, 5):
                M = build_mult_matrix(I, t, char=p)
                maps += 1
                if rank(M) != oracles.rank(ref, p) or map_rank(I, t, p) != oracles.rank(ref, p):
                    bad.append((gens, t, p))
                for v in kernel_basis(M):
                    vectors += 1
                    if any((x % p if p else x) for x in M @ list(v)):
                        bad.append((gens, t, p, "kernel"))
    return not bad, f"{maps} maps, {vectors} kernel vectors, bad: {bad[:3]}"


# --------------------------------------------------------------------------
# criterion 11: the grid runs in a worker process under a hard wall-clock budget

GRID_BUDGET = 600.0
GRID_CHARS = (0, 2, 3, 5)


def grid_cells():
    cells = []
    for d in (4, 5, 6):
        for r in range(d, 9):
            for k in range(2, 10):
                h = h_vector(family_uniform(r, k, d), max_dim=10**9)
                cells.append((max(h), r, k, d))
    return sorted(cells)


def _grid_worker(cells, out):
    for size, r, k, d in cells:
        I = family_uniform(r, k, d)
        res = []
        for p in GRID_CHARS:
            rep = wlp_verdict(I, p, max_dim=10**9)
            res.append((rep.verdict.value, rep.first_failure))
        out.put((r, k, d, tuple(res)))


def run_grid(cells, budget):
    """Verdicts for as many cells as fit in ``budget`` seconds, in the given order."""
    ctx = mp.get_context("fork")
    out = ctx.Queue()
    proc = ctx.Process(target=_grid_worker, args=(cells, out), daemon=True)
    deadline = time.monotonic() + budget
    proc.start()
    done = {}
    while len(done) < len(cells):
        left = deadline - time.monotonic()
        if left <= 0:
            break
        try:
            r, k, d, res = out.get(timeout=min(left, 5.0))
        except queue.Empty:
            if not proc.is_alive():
                break
            continue
        done[(r, k, d)] = res
    proc.terminate()
    proc.join()
    return done


def _fmt(res):
    return "  ".join(f"{p}:{v}" + (f"@{ff}" if ff is not None else "") for p, (v, ff) in zip(GRID_CHARS, res))


def c11():
    t0 = time.perf_counter()
    cap = max_dim_from_env()
    cells = grid_cells()
    runnable = [c for c in cells if c[0] <= cap]
    over_cap = [c for c in cells if c[0] > cap]
    done = run_grid(runnable, GRID_BUDGET - (time.perf_counter() - t0) - 30)
    # determinism: the cheapest cells again, in a fresh process
    again = run_grid(runnable[:12], 30)
    deterministic = all(done.get(key) == res for key, res in again.items()) and len(again) == 12
    lines = []
    for size, r, k, d in cells:
        res = done.get((r, k, d))
        status = _fmt(res) if res else ("skipped: dim > cap" if size > cap else "not reached")
        lines.append(f"    r={r} k={k} d={d} max_h={size:>6}  {status}")
    missing = [c for c in cells if (c[1], c[2], c[3]) not in done]
    ok = not missing and deterministic
    detail = (f"{len(done)}/{len(cells)} cells x {len(GRID_CHARS)} chars completed, "
              f"{len(over_cap)} above the {cap} cap, {len(missing) - len(over_cap)} not reached in budget, "
              f"deterministic={deterministic}\n" + "\n".join(lines))
    return ok, detail


CRITERIA = [
    (1, "example h-vector", 1, c1),
    (2, "example failure in char 2", 5, c2),
    (3, "second example", 60, c3),
    (4, "quadratic witness sweep", 60, c4),
    (5, "cubic witness sweep", 120, c5),
    (6, "top-power witness sweep", 60, c6),
    (7, "squarefree truncation grid", 120, c7),
    (8, "classical sanity", 5, c8),
    (9, "counting identities", 1, c9),
    (10, "oracle equivalence", 60, c10),
    (11, "uniform family grid", 600, c11),
]


def _line(num, name, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} criterion {num:>2} ({name}): {detail}"


@pytest.mark.parametrize("num,name,limit,fn", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(num, name, limit, fn, capsys):
    ok, detail = _timed(limit, fn)
    with capsys.disabled():
        print("\n" + _line(num, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for num, name, limit, fn in CRITERIA:
        ok, detail = _timed(limit, fn)
        print(_line(num, name, ok, detail), flush=True)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
