"""Result documents, SVG drawings of runs and summary tables."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .cluster import Cluster, RunStats, Trace
from .geometry import Box
from .numeric import Dyadic

DECIMAL_DIGITS = 40


def dyadic_field(x: Dyadic) -> dict:
    """Exact ``m*2^e`` rendering plus a 40-digit decimal."""
    return {"exact": str(x), "decimal": x.decimal(DECIMAL_DIGITS)}


def parse_dyadic_field(obj) -> Dyadic:
    if isinstance(obj, dict):
        return Dyadic.parse(obj["exact"])
    return Dyadic.parse(str(obj))


@dataclass
class ResultDocument:
    input: dict
    clusters: list[dict] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @classmethod
    def from_run(cls, echo: dict, clusters: list[Cluster], stats: RunStats) -> ResultDocument:
        cl = [
            {
                "center_re": dyadic_field(c.disc.cre),
                "center_im": dyadic_field(c.disc.cim),
                "radius": dyadic_field(c.disc.radius),
                "multiplicity": c.multiplicity,
            }
            for c in sorted(clusters, key=lambda c: (c.disc.cre, c.disc.cim))
        ]
        st = {
            "n1": stats.counters.n1,
            "n2": stats.counters.n2,
            "n3": stats.counters.n3,
            "tree_depth": stats.tree_depth,
            "tree_size": stats.tree_size,
            "clusters": stats.clusters,
            "total_multiplicity": stats.total_multiplicity,
            "wall_time_ms": round(stats.wall_time * 1000.0, 3),
        }
        return cls(dict(echo), cl, st)

    def to_dict(self) -> dict:
        return {"input": self.input, "clusters": self.clusters, "stats": self.stats}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> ResultDocument:
        obj = json.loads(text)
        return cls(obj["input"], obj["clusters"], obj["stats"])

    def cluster_discs(self) -> list[tuple[Dyadic, Dyadic, Dyadic, int]]:
        return [
            (parse_dyadic_field(c["center_re"]), parse_dyadic_field(c["center_im"]),
             parse_dyadic_field(c["radius"]), int(c["multiplicity"]))
            for c in self.clusters
        ]


# -- SVG ------------------------------------------------------------------------


def _num(x) -> str:
    return format(float(x), ".12g")


def emit_svg(doc: ResultDocument, trace: Trace | None) -> str:
    """SVG 1.1 drawing: initial box thick, every created box thin, clusters as circles.

    The view box is the initial box; the imaginary axis points up.
    """
    if trace is not None:
        b0 = trace.initial_box
    else:
        bx = doc.input["box"]
        b0 = Box(parse_dyadic_field(bx["center_re"]), parse_dyadic_field(bx["center_im"]),
                 parse_dyadic_field(bx["width"]))
    w = float(b0.width)
    x0 = float(b0.cre) - w / 2
    y0 = -(float(b0.cim) + w / 2)
    thick = w / 150
    thin = w / 1500
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_num(x0)} {_num(y0)} {_num(w)} {_num(w)}" width="800" height="800">',
        f'<g fill="none" stroke="#555" stroke-width="{_num(thin)}">',
    ]
    boxes = trace.boxes if trace is not None else []
    for b in boxes:
        bw = float(b.width)
        out.append(f'<rect x="{_num(float(b.cre) - bw / 2)}" y="{_num(-float(b.cim) - bw / 2)}" '
                   f'width="{_num(bw)}" height="{_num(bw)}"/>')
    out.append("</g>")
    out.append(f'<rect x="{_num(x0)}" y="{_num(y0)}" width="{_num(w)}" height="{_num(w)}" '
               f'fill="none" stroke="black" stroke-width="{_num(thick)}"/>')
    # tiny discs get a visible minimum radius; the exact one is kept as data
    out.append(f'<g fill="none" stroke="#c00" stroke-width="{_num(thick / 2)}">')
    for cre, cim, rad, m in doc.cluster_discs():
        r = max(float(rad), w / 200)
        out.append(f'<circle cx="{_num(cre)}" cy="{_num(-float(cim))}" r="{_num(r)}" '
                   f'data-multiplicity="{m}" data-radius="{rad}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


# -- tables ----------------------------------------------------------------------

COLUMNS = ("instance", "(#Sols:#Clus)", "(depth:size)", "n1", "n2", "n3", "time")


def stats_row(doc: ResultDocument) -> list[str]:
    st = doc.stats
    name = doc.input.get("instance") or doc.input.get("family") or doc.input.get("file", "?")
    return [
        str(name),
        f"({st['total_multiplicity']}:{st['clusters']})",
        f"({st['tree_depth']}:{st['tree_size']})",
        str(st["n1"]),
        str(st["n2"]),
        str(st["n3"]),
        f"{st['wall_time_ms'] / 1000.0:.2f}s",
    ]


def emit_stats_table(docs: list[ResultDocument]) -> str:
    """Aligned text table, one row per document in input order."""
    if not docs:
        raise ValueError("need at least one document")
    rows = [list(COLUMNS)] + [stats_row(d) for d in docs]
    widths = [max(len(r[i]) for r in rows) for i in range(len(COLUMNS))]
    lines = []
    for r in rows:
        cells = [r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"
