"""Subdivision driver: quadtree refinement, grouping and cluster validation."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import Box, Disc, containing_disc
from .numeric import Dyadic
from .pellet import Strategy, TestCounters, counting_test, exclusion_test
from .polynomial import CoeffOracle

__all__ = [
    "Box",
    "Cluster",
    "ClusterError",
    "Component",
    "Config",
    "Disc",
    "RunStats",
    "cluster_roots",
    "containing_disc",
    "group_components",
    "process_component",
    "recheck_naturality",
    "validate_component",
]

DEFAULT_EPSILON = Dyadic(1, -53)
BOX_MANTISSA_BITS = 40
GUARD_LEVELS = 64


class ClusterError(RuntimeError):
    """Raised when the subdivision exceeds its depth limit."""


def _dyadic_down(x) -> Dyadic:
    """Largest dyadic <= x that keeps 64 significant bits (x > 0)."""
    if isinstance(x, Dyadic):
        return x
    q = Fraction(x)
    return Dyadic.from_fraction(q, 64, "f")


def _ceil_log2(q: Fraction) -> int:
    """Smallest k with 2**k >= q > 0, exact for any size of q."""
    n, d = q.numerator, q.denominator
    k = n.bit_length() - d.bit_length()  # q lies in (2**(k-1), 2**(k+1))
    fits = (d << k) >= n if k >= 0 else d >= (n << -k)
    return k if fits else k + 1


def _round_width_up(w: Dyadic) -> Dyadic:
    if w.bits() <= BOX_MANTISSA_BITS:
        return w
    return w.round(BOX_MANTISSA_BITS, "c")


@dataclass(frozen=True)
class Cluster:
    """A natural cluster: ``multiplicity`` roots in ``disc`` and in ``3 * disc``."""

    disc: Disc
    multiplicity: int

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("cluster multiplicity must be >= 1")


@dataclass
class Config:
    strategy: Strategy = Strategy.V4
    epsilon: Dyadic = DEFAULT_EPSILON
    initial_box: Box = field(default_factory=lambda: Box(0, 0, 2))
    max_depth: int | None = None
    record_trace: bool = True

    def __post_init__(self):
        if isinstance(self.strategy, str):
            self.strategy = Strategy.parse(self.strategy)
        self.epsilon = _dyadic_down(self.epsilon)
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        b = self.initial_box
        w = _round_width_up(b.width)
        if w != b.width:
            self.initial_box = Box(b.cre, b.cim, w, b.depth)
        if self.max_depth is None:
            ratio = self.initial_box.width.to_fraction() / self.epsilon.to_fraction()
            self.max_depth = max(0, _ceil_log2(ratio)) + GUARD_LEVELS


@dataclass
class RunStats:
    counters: TestCounters = field(default_factory=TestCounters)
    tree_depth: int = 0
    tree_size: int = 1
    clusters: int = 0
    total_multiplicity: int = 0
    wall_time: float = 0.0
    validations: int = 0


@dataclass
class Component:
    """Connected same-depth boxes with the disc covering their bounding square."""

    boxes: tuple[Box, ...]
    disc: Disc
    depth: int
    known_mult: int | None = None

    @property
    def key(self):
        return (self.disc.cre, self.disc.cim)

    def __len__(self) -> int:
        return len(self.boxes)


@dataclass
class Trace:
    """Boxes created during a run, for drawing."""

    initial_box: Box
    boxes: list[Box] = field(default_factory=list)


# -- grouping --------------------------------------------------------------------


def _grid(b: Box, origin: tuple[Dyadic, Dyadic]) -> tuple[int, int]:
    h = b.width.shift(-1)
    w = b.width.to_fraction()
    gx = (b.cre - h - origin[0]).to_fraction() / w
    gy = (b.cim - h - origin[1]).to_fraction() / w
    if gx.denominator != 1 or gy.denominator != 1:
        raise ValueError("box is not aligned on the grid")
    return int(gx), int(gy)


def group_components(boxes, origin: tuple[Dyadic, Dyadic] | None = None) -> list[Component]:
    """Maximal edge-or-corner connected groups of same-depth boxes."""
    boxes = list(boxes)
    if not boxes:
        return []
    w = boxes[0].width
    depth = boxes[0].depth
    if any(b.width != w for b in boxes):
        raise ValueError("boxes must share one width")
    if origin is None:
        h = w.shift(-1)
        origin = (min(b.cre for b in boxes) - h, min(b.cim for b in boxes) - h)
    cells = {_grid(b, origin): b for b in boxes}
    seen = set()
    out = []
    for start in sorted(cells):
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        members = []
        while stack:
            cx, cy = stack.pop()
            members.append((cx, cy))
            for dx in (-1, 0, 1):
                for dy in (-1, 0, 1):
                    nb = (cx + dx, cy + dy)
                    if nb in cells and nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
        members.sort()
        xs = [m[0] for m in members]
        ys = [m[1] for m in members]
        x0, x1 = min(xs), max(xs) + 1
        y0, y1 = min(ys), max(ys) + 1
        side = max(x1 - x0, y1 - y0)
        cre = origin[0] + w * Dyadic(x0 + x1, -1)
        cim = origin[1] + w * Dyadic(y0 + y1, -1)
        disc = Disc(cre, cim, w * Dyadic(3 * side, -2))
        boxes_c = tuple(sorted((cells[m] for m in members), key=lambda b: (b.cre, b.cim)))
        out.append(Component(boxes_c, disc, depth))
    out.sort(key=lambda c: c.key)
    return out


# -- subdivision steps ---------------------------------------------------------


def process_component(f: CoeffOracle, comp: Component, cfg: Config, counters: TestCounters,
                      trace: Trace | None = None) -> list[Box]:
    """Split every box of ``comp`` and keep the children not proven root-free."""
    kept = []
    for b in comp.boxes:
        for child in b.children():
            if trace is not None:
                trace.boxes.append(child)
            res = exclusion_test(f, containing_disc(child), cfg.strategy, counters)
            if not res.exclude:
                kept.append(child)
    return kept


def _separated(comp: Component, others: list[Component], emitted: list[Cluster]) -> bool:
    big = comp.disc.scaled(4)
    for cl in emitted:
        if big.intersects_disc(cl.disc):
            return False
    for o in others:
        if o is comp or not big.intersects_disc(o.disc):
            continue
        if any(big.intersects_box(b) for b in o.boxes):
            return False
    return True


def is_candidate(comp: Component, others: list[Component], emitted: list[Cluster],
                 cfg: Config) -> bool:
    small = comp.disc.radius <= cfg.epsilon
    if not small:
        if cfg.strategy is not Strategy.V4E or (comp.known_mult or 0) >= 2:
            return False
    return _separated(comp, others, emitted)


def validate_component(f: CoeffOracle, comp: Component, others: list[Component],
                       emitted: list[Cluster], cfg: Config, counters: TestCounters):
    """A Cluster when the natural-cluster certificate holds; else the counts seen.

    Returns ``Cluster`` or a ``(m, m3)`` pair of counting results (-1 when
    inconclusive).
    """
    d = f.degree
    m = counting_test(f, comp.disc, d, counters, discarding=False)
    if m == 0:
        return (0, None)
    m3 = counting_test(f, comp.disc.scaled(3), d, counters, discarding=False)
    small = comp.disc.radius <= cfg.epsilon
    if m >= 1 and m == m3 and (small or (cfg.strategy is Strategy.V4E and m == 1)):
        return Cluster(comp.disc, int(m))
    return (int(m), int(m3))


def recheck_naturality(f: CoeffOracle, cl: Cluster) -> bool:
    """Re-certify that both the disc and its threefold dilation hold m roots."""
    d = f.degree
    c = TestCounters()
    return (counting_test(f, cl.disc, d, c) == cl.multiplicity
            and counting_test(f, cl.disc.scaled(3), d, c) == cl.multiplicity)


def cluster_roots(f: CoeffOracle, cfg: Config | None = None, *, trace: Trace | None = None,
                  deadline: float | None = None):
    """Natural clusters of roots of ``f`` covering the roots in the initial box.

    Returns ``(clusters, stats)`` with clusters sorted by center. ``deadline``
    (a ``time.perf_counter`` value) aborts with ``TimeoutError``.
    """
    if cfg is None:
        cfg = Config()
    if f.degree < 1:
        raise ValueError("polynomial degree must be at least 1")
    t0 = time.perf_counter()
    stats = RunStats()
    counters = stats.counters
    b0 = cfg.initial_box
    if trace is not None:
        trace.initial_box = b0
    h0 = b0.width.shift(-1)
    origin = (b0.cre - h0, b0.cim - h0)
    b0 = Box(b0.cre, b0.cim, b0.width, 0)
    active = group_components([b0], origin)
    emitted: list[Cluster] = []
    depth = 0
    while active:
        if depth > cfg.max_depth:
            raise ClusterError(
                f"subdivision depth exceeded {cfg.max_depth}; "
                "a root may lie on a box boundary or the input is degenerate"
            )
        if deadline is not None and time.perf_counter() > deadline:
            raise TimeoutError(f"run exceeded its time budget at depth {depth} "
                               f"with {len(emitted)} clusters emitted")
        active.sort(key=lambda c: c.key)
        survivors: list[Component] = []
        for comp in active:
            if is_candidate(comp, active, emitted, cfg):
                stats.validations += 1
                res = validate_component(f, comp, active, emitted, cfg, counters)
                if isinstance(res, Cluster):
                    emitted.append(res)
                    continue
                m, m3 = res
                if m == 0:
                    continue  # certified root-free: every box lies in the disc
                if m >= 2 and m == m3:
                    comp.known_mult = m
            survivors.append(comp)
        # refine everything that was not emitted or discarded
        parent: dict[Box, int] = {}
        for idx, comp in enumerate(survivors):
            for kid in process_component(f, comp, cfg, counters, trace):
                parent[kid] = idx
            stats.tree_size += 4 * len(comp.boxes)
        active = group_components(parent, origin)
        # a component that neither split nor merged keeps its multiplicity hint
        owners: dict[int, list[Component]] = {}
        for g in active:
            srcs = {parent[b] for b in g.boxes}
            if len(srcs) == 1:
                owners.setdefault(srcs.pop(), []).append(g)
            else:
                for s in srcs:
                    owners.setdefault(s, []).extend([g, g])
        for idx, gs in owners.items():
            if len(gs) == 1 and survivors[idx].known_mult:
                gs[0].known_mult = survivors[idx].known_mult
        if active:
            depth += 1
            stats.tree_depth = depth
    emitted.sort(key=lambda c: (c.disc.cre, c.disc.cim))
    stats.clusters = len(emitted)
    stats.total_multiplicity = sum(c.multiplicity for c in emitted)
    stats.wall_time = time.perf_counter() - t0
    return emitted, stats
