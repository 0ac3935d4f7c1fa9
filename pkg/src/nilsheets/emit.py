"""Render induction tables and orbit lists as JSON, text or LaTeX."""

from __future__ import annotations

import json
from typing import Iterable

from .induction import SheetRecord, group_by_induced
from .rootsystem import RootSystem

__all__ = ["sheets_to_json", "dump_json", "json_roundtrip", "sheets_to_text", "sheets_to_latex",
           "rows_to_text", "rows_to_latex", "sheet_to_dict"]


def sheet_to_dict(rec: SheetRecord) -> dict:
    rep = rec.representative
    return {
        "levi": {
            "pi": [i + 1 for i in rec.levi.pi],
            "types": [c.name() for c in rec.levi.components],
            "name": rec.levi.name,
        },
        "rigid_wdd": list(rec.rigid.wdd),
        "sheet_diagram": list(rec.sheet_diagram.labels),
        "rank": rec.rank,
        "induced": {
            "wdd": list(rec.induced.wdd),
            "dim": rec.induced.dimension,
            "label": rec.induced.label,
        },
        "sheet_dim": rec.sheet_dim,
        "dixmier": rec.dixmier,
        "representative": None if rep is None else {"roots": list(rep.roots), "verified": rep.verified},
    }


def sheets_to_json(algebra: str, records: Iterable[SheetRecord]) -> dict:
    return {"algebra": algebra, "sheets": [sheet_to_dict(r) for r in records]}


def dump_json(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=True) + "\n"


def json_roundtrip(text: str) -> str:
    return dump_json(json.loads(text))


def _rep_text(rec: SheetRecord) -> str:
    rep = rec.representative
    if rep is None:
        return "-"
    return ",".join(map(str, rep.roots)) + ("" if rep.verified else " (unverified)")


SHEET_HEADER = ["orbit", "characteristic", "dim", "sheet diagram", "rank", "levi", "rigid", "representative"]


def _sheet_rows(rs: RootSystem, records: list[SheetRecord]) -> list[list[str]]:
    rows = []
    for orbit, recs in group_by_induced(records):
        for n, r in enumerate(recs):
            first = n == 0
            rows.append([
                orbit.name() if first else "",
                rs.format_labels(orbit.wdd) if first else "",
                str(orbit.dimension) if first else "",
                rs.format_labels(r.sheet_diagram.labels),
                str(r.rank),
                r.levi.name,
                r.rigid.label or "0",
                _rep_text(r),
            ])
    return rows


def rows_to_text(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    fmt = lambda cells: " | ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    out = [fmt(header), "-+-".join("-" * w for w in widths)]
    out += [fmt(r) for r in rows]
    return "\n".join(out) + "\n"


def _tex(s: str) -> str:
    s = s.replace("~", r"\tilde{}").replace("_", r"\_")
    return s


def rows_to_latex(header: list[str], rows: list[list[str]], caption: str = "") -> str:
    cols = "|" + "l|" * len(header)
    out = [r"\begin{longtable}{" + cols + "}"]
    if caption:
        out.append(r"\caption{" + _tex(caption) + r"}\\")
    out += [r"\hline", " & ".join(_tex(h) for h in header) + r" \\", r"\hline", r"\endhead"]
    for r in rows:
        out.append(" & ".join(_tex(c) for c in r) + r" \\")
    out += [r"\hline", r"\end{longtable}"]
    return "\n".join(out) + "\n"


def sheets_to_text(rs: RootSystem, records: list[SheetRecord]) -> str:
    return rows_to_text(SHEET_HEADER, _sheet_rows(rs, records))


def sheets_to_latex(rs: RootSystem, records: list[SheetRecord]) -> str:
    return rows_to_latex(SHEET_HEADER, _sheet_rows(rs, records), f"Induced nilpotent orbits in {rs}")
