"""Serialising results as JSON, CSV or an aligned text table.

Output is a pure function of the inputs: keys, rows and columns come out in
a fixed order, so repeated runs produce identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Sequence

from .engine import SocleInfo, WlpReport
from .families import FamilySpec
from .monomials import MonomialIdeal, Polynomial

CSV_COLUMNS = ("run_id", "family", "r", "d", "alphas", "char", "t", "h_t", "h_t1", "rank", "maximal")
FORMATS = ("table", "json", "csv")


def polynomial_json(f: Polynomial | None) -> list | None:
    if f is None:
        return None
    return [{"monomial": list(m), "coeff": int(c)} for m, c in f.sorted_terms()]


def ideal_json(I: MonomialIdeal) -> dict:
    return {"r": I.r, "generators": [list(g) for g in I.generators]}


def socle_json(s: SocleInfo) -> dict:
    return {"degrees": list(s.per_degree), "is_level": s.is_level, "socle_degree": s.socle_degree}


def wlp_json(rep: WlpReport) -> dict:
    out = {
        "verdict": rep.verdict.value,
        "first_failure": rep.first_failure,
        "rows": [{"t": r.t, "h_t": r.h_t, "h_t1": r.h_t1, "rank": r.rank, "maximal": r.maximal}
                 for r in rep.rows],
        "witness": polynomial_json(rep.witness),
    }
    if rep.note:
        out["note"] = rep.note
    if not rep.complete:
        out["complete"] = False
    return out


@dataclass
class RunRecord:
    """Everything known about one (ideal, characteristic) run."""

    family: FamilySpec
    ideal: MonomialIdeal
    char: int
    h_vector: tuple[int, ...]
    socle: SocleInfo | None = None
    wlp: WlpReport | None = None
    extra: dict | None = None

    @property
    def run_id(self) -> str:
        return f"{self.family.key()}:char={self.char}"

    def to_json(self) -> dict:
        out = {
            "ideal": ideal_json(self.ideal),
            "char": self.char,
            "h_vector": list(self.h_vector),
        }
        if self.socle is not None:
            out["socle"] = socle_json(self.socle)
        if self.wlp is not None:
            out["wlp"] = wlp_json(self.wlp)
        if self.extra:
            out.update(self.extra)
        return out

    def csv_rows(self) -> list[list]:
        fam = self.family
        alphas = "-".join(map(str, fam.alphas)) if fam.alphas else ""
        d = fam.d if fam.d is not None else ""
        base = [self.run_id, fam.tag.value, fam.r, d, alphas, self.char]
        if self.wlp is None:
            return [base + ["", "", "", "", ""]]
        return [base + [r.t, r.h_t, r.h_t1, r.rank, str(r.maximal).lower()] for r in self.wlp.rows]


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def to_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def to_table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [[str(h) for h in header]] + [["" if v is None else str(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def emit_report(records: RunRecord | Sequence[RunRecord], fmt: str = "json") -> bytes:
    """Render one or more run records; a single record renders as a JSON object, several as a list."""
    single = isinstance(records, RunRecord)
    recs = [records] if single else list(records)
    if fmt == "json":
        body = recs[0].to_json() if single else [r.to_json() for r in recs]
        return _dumps(body).encode()
    if fmt == "csv":
        return to_csv(CSV_COLUMNS, [row for r in recs for row in r.csv_rows()]).encode()
    if fmt == "table":
        parts = []
        for r in recs:
            head = [f"{r.run_id}", f"h-vector: {tuple(r.h_vector)}"]
            if r.socle is not None:
                head.append(f"socle: {r.socle.per_degree} level={r.socle.is_level}")
            if r.wlp is not None:
                ff = r.wlp.first_failure
                head.append(f"WLP {r.wlp.verdict.value}" + (f" (first failure t={ff})" if ff is not None else ""))
                rows = [[x.t, x.h_t, x.h_t1, x.rank, "yes" if x.maximal else "NO"] for x in r.wlp.rows]
                head.append(to_table(["t", "h_t", "h_t+1", "rank", "maximal"], rows).rstrip("\n"))
                if r.wlp.witness is not None:
                    head.append(f"kernel element in degree {r.wlp.witness_degree}: {r.wlp.witness}")
                if r.wlp.note:
                    head.append(r.wlp.note)
            if r.extra:
                for k, v in r.extra.items():
                    head.append(f"{k}: {v}")
            parts.append("\n".join(head))
        return ("\n\n".join(parts) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")
