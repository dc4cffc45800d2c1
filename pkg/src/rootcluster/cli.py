"""Command-line front end.

Example::

    rootcluster --family bernoulli:64 --box 0,0,300 --epsilon 2^-53 --strategy v4 --json out.json

Exit codes: 0 success, 2 usage error, 3 input error, 4 computation aborted.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .cluster import ClusterError, Config, Trace, cluster_roots
from .geometry import Box
from .numeric import Dyadic
from .pellet import Strategy
from .polynomial import FamilyDomainError, PolyParseError, parse_family, read_poly_file
from .report import ResultDocument, dyadic_field, emit_stats_table, emit_svg

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_ABORT = 0, 2, 3, 4
CENTER_BITS = 64


class UsageError(ValueError):
    pass


@dataclass
class RunRequest:
    family: str | None
    poly_path: str | None
    box: Box
    epsilon: Dyadic
    strategy: Strategy
    json_path: str | None = None
    svg_path: str | None = None
    stats: bool = False
    max_depth: int | None = None

    @property
    def instance(self) -> str:
        return self.family if self.family is not None else str(self.poly_path)


def parse_number(text: str) -> Fraction:
    """Exact value of ``m*2^e``, ``2^e``, a decimal or a fraction."""
    t = text.strip()
    try:
        if "^" in t:
            return Dyadic.parse(t).to_fraction()
        return Fraction(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed number {text!r}") from exc


def _dyadic_near(q: Fraction) -> tuple[Dyadic, Fraction]:
    d = Dyadic.from_fraction(q, CENTER_BITS, "n") if q else Dyadic(0)
    return d, abs(q - d.to_fraction())


def box_from(cre: Fraction, cim: Fraction, w: Fraction) -> Box:
    """A dyadic box containing the requested one (exact when already dyadic)."""
    if w <= 0:
        raise UsageError("box width must be positive")
    xr, er = _dyadic_near(cre)
    xi, ei = _dyadic_near(cim)
    need = w + 2 * max(er, ei)
    width = Dyadic.from_fraction(need, CENTER_BITS, "c")
    return Box(xr, xi, width)


def epsilon_from(q: Fraction) -> Dyadic:
    """Largest 64-bit dyadic not above ``q``."""
    if q <= 0:
        raise UsageError("epsilon must be positive")
    return Dyadic.from_fraction(q, CENTER_BITS, "f")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rootcluster", description="Certified complex root clustering.")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", help="benchmark family, e.g. bernoulli:64 or mignotte:64,14")
    src.add_argument("--poly", help="polynomial file ('degree d' then d+1 lines 're im')")
    p.add_argument("--box", required=True, help="initial box as center_re,center_im,width")
    p.add_argument("--epsilon", default="2^-53", help="cluster radius bound (2^-e or exact decimal)")
    p.add_argument("--strategy", default="v4", choices=[s.value for s in Strategy])
    p.add_argument("--json", dest="json_path", help="write the result document here ('-' for stdout)")
    p.add_argument("--svg", dest="svg_path", help="write a drawing of the subdivision here")
    p.add_argument("--stats", action="store_true", help="print a statistics table")
    p.add_argument("--max-depth", type=int, help="subdivision depth limit")
    return p


def parse_request(argv) -> RunRequest:
    """Validated request; raises UsageError (or SystemExit from argparse)."""
    ns = _parser().parse_args(argv)
    parts = ns.box.split(",")
    if len(parts) != 3:
        raise UsageError("--box takes center_re,center_im,width")
    cre, cim, w = (parse_number(x) for x in parts)
    return RunRequest(
        family=ns.family,
        poly_path=ns.poly,
        box=box_from(cre, cim, w),
        epsilon=epsilon_from(parse_number(ns.epsilon)),
        strategy=Strategy.parse(ns.strategy),
        json_path=ns.json_path,
        svg_path=ns.svg_path,
        stats=ns.stats,
        max_depth=ns.max_depth,
    )


def load_source(req: RunRequest):
    if req.family is not None:
        return parse_family(req.family)
    return read_poly_file(req.poly_path)


def run(req: RunRequest, trace: Trace | None = None) -> ResultDocument:
    """Cluster the requested polynomial and build its result document."""
    f = load_source(req)
    cfg = Config(strategy=req.strategy, epsilon=req.epsilon, initial_box=req.box,
                 max_depth=req.max_depth)
    t0 = time.perf_counter()
    clusters, stats = cluster_roots(f, cfg, trace=trace)
    stats.wall_time = time.perf_counter() - t0
    b = cfg.initial_box
    echo = {
        "instance": req.instance,
        "source": "family" if req.family is not None else "file",
        "degree": f.degree,
        "box": {"center_re": dyadic_field(b.cre), "center_im": dyadic_field(b.cim),
                "width": dyadic_field(b.width)},
        "epsilon": dyadic_field(cfg.epsilon),
        "strategy": cfg.strategy.value,
    }
    return ResultDocument.from_run(echo, clusters, stats)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        req = parse_request(argv)
    except SystemExit as exc:  # argparse already printed usage
        return EXIT_USAGE if exc.code else EXIT_OK
    except UsageError as exc:
        print(f"rootcluster: {exc}", file=sys.stderr)
        return EXIT_USAGE
    trace = Trace(req.box) if req.svg_path else None
    try:
        doc = run(req, trace)
    except (OSError, PolyParseError, FamilyDomainError) as exc:
        print(f"rootcluster: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ClusterError as exc:
        print(f"rootcluster: aborted: {exc}", file=sys.stderr)
        return EXIT_ABORT
    try:
        if req.json_path == "-":
            sys.stdout.write(doc.to_json())
        elif req.json_path:
            with open(req.json_path, "w") as fh:
                fh.write(doc.to_json())
        if req.svg_path:
            with open(req.svg_path, "w") as fh:
                fh.write(emit_svg(doc, trace))
    except OSError as exc:
        print(f"rootcluster: cannot write output: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if req.stats or not (req.json_path or req.svg_path):
        sys.stdout.write(emit_stats_table([doc]))
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
