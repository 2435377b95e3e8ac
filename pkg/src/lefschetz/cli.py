"""Command-line front end: ``lefschetz <command> [options]``.

Exit status is 0 whenever the computation completes (a failing Lefschetz
property is a result, not an error), 1 for usage, parse and parameter
errors (including a graded piece above ``LEFSCHETZ_MAX_DIM``), and 2 when
an internal consistency check trips.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from pathlib import Path

from .engine import DimensionCapExceeded, h_vector, max_dim_from_env, slp_check, socle, wlp_check, wlp_verdict
from .families import FamilySpec, FamilyTag, IdealSyntaxError, ParameterError, parse_ideal
from .linalg import as_char, is_prime
from .monomials import ContractViolation
from .report import CSV_COLUMNS, FORMATS, RunRecord, emit_report, polynomial_json, to_csv, to_table
from .witnesses import (
    IdentityKind,
    counting_identity_check,
    verify_witness,
    witness_prop,
    witness_thmA,
    witness_thmB,
    witness_thmC,
)

log = logging.getLogger("lefschetz")

COMMANDS = ("hvector", "check", "slp", "socle", "witness", "scan", "identities")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_range(text: str) -> list[int]:
    """``"4"``, ``"4..10"`` or ``"2,3,5"``."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..", 1)
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N, A..B or a comma list, got {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return out


def _alphas(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(a) for a in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma list of integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="lefschetz", description="Weak and strong Lefschetz checks for Artinian monomial algebras.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--family", choices=[t.value for t in FamilyTag if t is not FamilyTag.CUSTOM])
    ap.add_argument("--ideal", help='generators, e.g. "x1^2, x2^2, x1*x2"; needs --r')
    ap.add_argument("--r", type=_int_range)
    ap.add_argument("--k", type=_int_range)
    ap.add_argument("--d", type=_int_range)
    ap.add_argument("--alphas", type=_alphas)
    ap.add_argument("--alpha", type=_int_range)
    ap.add_argument("--char", type=int, action="append", help="0 for the rationals; repeatable")
    ap.add_argument("--primes-upto", type=int, help="scan: add every prime up to this bound")
    ap.add_argument("--theorem", choices=["A", "B", "C", "prop"], help="witness: which construction")
    ap.add_argument("--i", type=int, default=1, help="witness --theorem prop: degree of the witness")
    ap.add_argument("--form", choices=["balanced", "literal"], default="balanced")
    ap.add_argument("--format", choices=FORMATS, default="table")
    ap.add_argument("--out", type=Path)
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--skip-oversize", action="store_true",
                    help="scan: record points above the dimension cap as skipped instead of aborting")
    ap.add_argument("--verdict-only", action="store_true",
                    help="scan: rank only the degrees that decide the verdict (rows list just those)")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def _single(values, name):
    if values is None:
        return None
    if len(values) != 1:
        raise UsageError(f"--{name} takes a single value for this command")
    return values[0]


def _need(value, name, family):
    if value is None:
        raise UsageError(f"--family {family} needs --{name}")
    return value


def family_points(args) -> list[FamilySpec]:
    """Every parameter point described by the flags (one point unless ranges were given)."""
    if (args.family is None) == (args.ideal is None):
        raise UsageError("give exactly one of --family or --ideal")
    if args.ideal is not None:
        r = _single(args.r, "r")
        if r is None:
            raise UsageError("--ideal needs --r")
        return [FamilySpec.custom(parse_ideal(args.ideal, r))]
    fam = args.family
    if fam == "uniform":
        return [FamilySpec.uniform(r, k, d) for r, k, d in product(
            _need(args.r, "r", fam), _need(args.k, "k", fam), _need(args.d, "d", fam)) if d <= r]
    if fam == "mixed":
        alphas = _need(args.alphas, "alphas", fam)
        return [FamilySpec.mixed(alphas, d) for d in _need(args.d, "d", fam)]
    if fam == "squares":
        return [FamilySpec.squares(r, d) for r, d in product(_need(args.r, "r", fam), _need(args.d, "d", fam))
                if d <= r]
    return [FamilySpec.j(r, a) for r, a in product(_need(args.r, "r", fam), _need(args.alpha, "alpha", fam))]


def characteristics(args, default=(0,)) -> list[int]:
    chars = list(args.char or [])
    if args.primes_upto is not None:
        if args.primes_upto < 2:
            raise UsageError("--primes-upto must be at least 2")
        chars += [p for p in range(2, args.primes_upto + 1) if is_prime(p)]
    if not chars:
        chars = list(default)
    for c in chars:
        as_char(c)  # rejects composites and negatives
    return sorted(set(chars), key=chars.index)


# --------------------------------------------------------------------------
# single-point commands


def _record(spec: FamilySpec, char: int, want_wlp=True, want_socle=True, quick=False) -> RunRecord:
    I = spec.ideal()
    h = h_vector(I)
    rec = RunRecord(spec, I, char, h.values)
    if want_socle:
        rec.socle = socle(I)
    if want_wlp:
        rec.wlp = wlp_verdict(I, char) if quick else wlp_check(I, char)
    return rec


def _slp_record(spec: FamilySpec, char: int) -> RunRecord:
    I = spec.ideal()
    rep = slp_check(I, char, max_dim=max_dim_from_env())
    extra = {"slp": {
        "verdict": rep.verdict.value,
        "first_failure": list(rep.first_failure) if rep.first_failure else None,
        "rows": [{"i": r.i, "power": r.power, "h_i": r.h_i, "h_target": r.h_target, "rank": r.rank,
                  "maximal": r.maximal} for r in rep.rows],
    }}
    return RunRecord(spec, I, char, rep.h_vector.values, extra=extra)


def _witness_record(args, spec: FamilySpec, char_override) -> RunRecord:
    theorem = args.theorem
    tag = spec.tag
    if theorem is None:
        if tag is FamilyTag.J_ALPHA:
            theorem = "C"
        elif tag is FamilyTag.SQUARES_D:
            theorem = "prop"
        elif tag is FamilyTag.MIXED_ALPHA_D:
            theorem = "A" if all(a <= 3 for a in spec.alphas) else "B"
        else:
            raise UsageError("witness needs --family mixed, squares or j (or --theorem)")
    if theorem == "A":
        w = witness_thmA(spec.alphas, spec.d, args.form)
    elif theorem == "B":
        w = witness_thmB(spec.alphas, spec.d, args.form)
    elif theorem == "C":
        w = witness_thmC(spec.r, spec.alpha, args.form)
    else:
        w = witness_prop(spec.r, spec.d, args.i, char_override)
    if w.family.key() != spec.key():
        raise UsageError(f"theorem {theorem} does not apply to {spec.key()}")
    char = char_override if char_override is not None else w.claimed_char.value
    I = spec.ideal()
    chk = verify_witness(I, char, w)
    extra = {"witness": {
        "theorem": theorem,
        "form": w.form,
        "degree": w.degree,
        "claimed_char": w.claimed_char.value,
        "degenerate": w.degenerate,
        "f": polynomial_json(w.f),
        "nonzero": chk.nonzero,
        "annihilated": chk.annihilated,
        "h_t_le_h_t1": chk.inequality,
        "conclusion": chk.conclusion,
    }}
    return RunRecord(spec, I, char, h_vector(I).values, extra=extra)


def _emit(args, data: bytes):
    if args.out:
        args.out.write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


# --------------------------------------------------------------------------
# scan


SCAN_TABLE = ("run_id", "verdict", "first_failure", "h_vector")


def _scan_point(job):
    spec, char, skip, quick = job
    try:
        rec = _record(spec, char, want_socle=True, quick=quick)
    except DimensionCapExceeded as exc:
        if not skip:
            raise
        return spec, char, None, str(exc)
    return spec, char, rec, None


def _skipped_record(spec, char, reason) -> RunRecord:
    return RunRecord(spec, spec.ideal(), char, (1,), extra={"skipped": reason})


def _existing_csv(path: Path) -> dict[str, list[list[str]]]:
    groups: dict[str, list[list[str]]] = {}
    if not path or not path.exists():
        return groups
    text = path.read_text()
    if text and not text.endswith("\n"):
        text = text[: text.rfind("\n") + 1]  # drop a half-written last line
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_COLUMNS:
        raise UsageError(f"{path} is not a scan CSV (unexpected header)")
    for row in rows[1:]:
        groups.setdefault(row[0], []).append(row)
    if groups:
        # an interrupted append can only have damaged the last group; redo it
        groups.pop(rows[-1][0])
    return groups


def _existing_json(path: Path) -> dict[str, dict]:
    if not path or not path.exists():
        return {}
    try:
        data = json.loads(path.read_text() or "[]")
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: cannot resume from malformed JSON ({exc})") from None
    return {item["run_id"]: item for item in data}


def run_scan(args) -> int:
    points = family_points(args)
    chars = characteristics(args)
    jobs_all = [(spec, c) for spec in points for c in chars]
    run_id = lambda spec, c: f"{spec.key()}:char={c}"  # noqa: E731
    order = [run_id(s, c) for s, c in jobs_all]
    fmt = args.format
    done_csv = _existing_csv(args.out) if fmt == "csv" else {}
    done_json = _existing_json(args.out) if fmt == "json" else {}
    done = set(done_csv) | set(done_json)
    todo = [(s, c, args.skip_oversize, args.verdict_only) for s, c in jobs_all if run_id(s, c) not in done]
    log.info("scan: %d points, %d already present, %d to run", len(jobs_all), len(done), len(todo))

    results: dict[str, RunRecord] = {}
    append = args.out is not None and fmt == "csv"
    if append:
        # start from the intact groups only, so new checkpoints never follow a torn line
        args.out.write_text(to_csv(CSV_COLUMNS, [row for key in order if key in done_csv for row in done_csv[key]]))

    def collect(item):
        spec, char, rec, skipped = item
        rec = rec or _skipped_record(spec, char, skipped)
        results[run_id(spec, char)] = rec
        if append:  # checkpoint so an interrupted scan can resume
            with args.out.open("a", newline="") as fh:
                csv.writer(fh, lineterminator="\n").writerows(rec.csv_rows())

    if args.jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            for item in pool.map(_scan_point, todo):
                collect(item)
    else:
        for job in todo:
            collect(_scan_point(job))

    if fmt == "csv":
        rows = []
        for key in order:
            rows.extend(done_csv[key] if key in done_csv else results[key].csv_rows())
        data = to_csv(CSV_COLUMNS, rows).encode()
    elif fmt == "json":
        items = []
        for key in order:
            if key in done_json:
                items.append(done_json[key])
            else:
                items.append({"run_id": key, **results[key].to_json()})
        data = (json.dumps(items, indent=2) + "\n").encode()
    else:
        rows = []
        for key in order:
            rec = results[key]
            if rec.wlp is None:
                rows.append([key, "skipped", "", ""])
            else:
                ff = rec.wlp.first_failure
                rows.append([key, rec.wlp.verdict.value, "" if ff is None else ff,
                             " ".join(map(str, rec.h_vector))])
        data = to_table(SCAN_TABLE, rows).encode()
    _emit(args, data)
    return 0


# --------------------------------------------------------------------------


def run_identities(args) -> int:
    rs = args.r or list(range(3, 13))
    rows = []
    for r in rs:
        if r >= 3:
            rows.append([r, "thm_a", "", counting_identity_check(r, IdentityKind.THM_A)])
            rows.append([r, "thm_b", "", counting_identity_check(r, IdentityKind.THM_B)])
        if r >= 4:
            rows.append([r, "thm_c", "", counting_identity_check(r, IdentityKind.THM_C)])
        for i in range(1, (r + 1) // 2 + 1):
            if i + 1 <= r:
                rows.append([r, "prop", i, counting_identity_check(r, IdentityKind.PROP, i)])
    header = ("r", "kind", "i", "holds")
    if args.format == "json":
        data = json.dumps([dict(zip(header, row)) for row in rows], indent=2) + "\n"
    elif args.format == "csv":
        data = to_csv(header, [[str(v).lower() if isinstance(v, bool) else v for v in row] for row in rows])
    else:
        data = to_table(header, rows)
    _emit(args, data.encode())
    return 0


def run(args) -> int:
    cmd = args.command
    if cmd == "identities":
        return run_identities(args)
    if cmd == "scan":
        return run_scan(args)
    points = family_points(args)
    if len(points) != 1:
        raise UsageError(f"{cmd} takes a single parameter point; use scan for ranges")
    spec = points[0]
    if cmd == "witness":
        chars = characteristics(args, default=(None,)) if args.char or args.primes_upto else [None]
        recs = [_witness_record(args, spec, c) for c in chars]
    else:
        chars = characteristics(args)
        if cmd == "hvector":
            recs = [_record(spec, c, want_wlp=False, want_socle=False) for c in chars[:1]]
        elif cmd == "socle":
            recs = [_record(spec, c, want_wlp=False) for c in chars[:1]]
        elif cmd == "slp":
            recs = [_slp_record(spec, c) for c in chars]
        else:
            recs = [_record(spec, c) for c in chars]
    _emit(args, emit_report(recs[0] if len(recs) == 1 else recs, args.format))
    return 0


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"lefschetz: error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return run(args)
    except (UsageError, IdealSyntaxError, ParameterError, ContractViolation, DimensionCapExceeded) as exc:
        print(f"lefschetz: error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"lefschetz: internal invariant violated: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
