"""Census driver: graphs -> labelled gluings -> pruning -> invariants -> classes."""

from __future__ import annotations

import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .invariants import InvariantRecord, invariant_record
from .pruning import (
    CRITERIA,
    PartialGluing,
    check_disc_curve,
    check_edge_incidence,
    check_small_face,
)
from .quadgraph import (
    QuadGraph,
    enumerate_quadgraphs,
    filter_useful_closed,
    from_code_text,
)
from .triangulation import from_signature, sign, slot_perm

log = logging.getLogger(__name__)

__all__ = [
    "CensusRecord",
    "CensusReport",
    "MustRunPriorLevels",
    "StoreError",
    "load_level",
    "run_census",
    "seed_records",
    "store_level",
]

MODES = ("closed", "ideal")

# complexity-zero closed manifolds, by isomorphism signature of a small
# one-vertex triangulation: S^3, RP^3, L(3,1) and S^2 x S^1
SEEDS = {
    "S3": "bagagajas",
    "RP3": "cagagbabqbwaqaabr",
    "L(3,1)": "cagagbababjbsaaaa",
    "S2xS1": "cajasbababjbsaaaa",
}


class StoreError(Exception):
    """A census store is missing, corrupt or inconsistent."""


class MustRunPriorLevels(StoreError):
    pass


@dataclass(frozen=True)
class CensusRecord:
    n: int
    signature: str
    record: InvariantRecord
    graph: str
    labels: tuple
    status: str  # "class=<id>" for a new class or "duplicate-of:<id>"

    def to_line(self) -> str:
        labs = "".join(str(x) for x in self.labels)
        return "\t".join([str(self.n), self.signature, self.graph, labs, self.status, self.record.to_text()])

    @classmethod
    def from_line(cls, line: str) -> "CensusRecord":
        n, sig, graph, labs, status, rec = line.rstrip("\n").split("\t")
        return cls(int(n), sig, InvariantRecord.from_text(rec), graph, tuple(int(c) for c in labs), status)


@dataclass
class CensusReport:
    n: int
    mode: str
    prune: tuple
    stages: Counter = field(default_factory=Counter)
    records: list = field(default_factory=list)

    @property
    def new_classes(self) -> list:
        return [r for r in self.records if r.status.startswith("class=")]

    def stage_rows(self) -> list:
        keys = [
            "graphs",
            "useful graphs",
            "labelings tried",
            "pruned:manifold",
            "pruned:faces",
            "pruned:incidence",
            "complete gluings",
            "candidates",
            "pruned:disc",
            "triangulations",
            "new classes",
        ]
        return [(k, self.stages.get(k, 0)) for k in keys]


# ---------------------------------------------------------------------------
# the labelling search


def _edge_order(g: QuadGraph) -> list:
    """Graph edge indices so that each edge touches an earlier tet (BFS)."""
    incident = [[] for _ in range(g.n)]
    for k, (u, v) in enumerate(g.edges):
        incident[u].append(k)
        if v != u:
            incident[v].append(k)
    order, seen_e, seen_v, queue = [], set(), {0}, [0]
    while queue:
        u = queue.pop(0)
        for k in incident[u]:
            if k in seen_e:
                continue
            seen_e.add(k)
            order.append(k)
            a, b = g.edges[k]
            w = b if a == u else a
            if w not in seen_v:
                seen_v.add(w)
                queue.append(w)
    return order


def search_graph(g: QuadGraph, mode: str, prune=CRITERIA, orientable_only: bool = True):
    """All complete gluings on ``g`` surviving the pruning.

    Returns ``(stats, found)`` with ``found`` a dict signature ->
    (labels, triangulation) keeping the first labelling reaching it.
    """
    closed = mode == "closed"
    stats = Counter()
    found = {}
    pg = PartialGluing(g)
    order = _edge_order(g)
    min_classes = g.n + 1 if closed else g.n
    eps = [0] * g.n
    eps[0] = 1
    incidence = closed and orientable_only and "incidence" in prune
    faces = "faces" in prune

    def leaf():
        stats["complete gluings"] += 1
        tri = pg.triangulation()
        ok = tri.is_candidate_closed() if closed else _ideal_candidate(tri, orientable_only)
        if not ok or (orientable_only and not tri.orientable):
            return
        stats["candidates"] += 1
        if closed and orientable_only and "disc" in prune and check_disc_curve(tri):
            stats["pruned:disc"] += 1
            return
        sig = tri.signature
        if sig not in found:
            found[sig] = (tuple(pg.labels), tri)

    def rec(i):
        if i == len(order):
            leaf()
            return
        k = order[i]
        (u, fu), (v, fv) = pg.slots[k]
        fresh = None
        if orientable_only:
            if eps[v] == 0:
                fresh = v
            elif eps[u] == 0:
                fresh = u
        for lab in range(6):
            if orientable_only:
                s = sign(slot_perm(fu, fv, lab))
                if fresh is None:
                    if -s * eps[u] != eps[v]:
                        continue
                elif fresh == v:
                    eps[v] = -s * eps[u]
                else:
                    eps[u] = -s * eps[v]
            stats["labelings tried"] += 1
            mark = pg.label(k, lab)
            if pg.bad_edges or pg.classes < min_classes:
                stats["pruned:manifold"] += 1
            elif faces and check_small_face(pg, pg.touched_roots(k)):
                stats["pruned:faces"] += 1
            elif incidence and check_edge_incidence(pg):
                stats["pruned:incidence"] += 1
            else:
                rec(i + 1)
            pg.undo(mark)
            if fresh is not None:
                eps[fresh] = 0

    rec(0)
    return stats, found


def _ideal_candidate(tri, orientable_only) -> bool:
    if not tri.is_candidate_ideal():
        return False
    if orientable_only:
        return all(lk.orientable for lk in tri.links)
    return True


def _graph_job(args):
    code, mode, prune, orientable_only = args
    g = from_code_text(code)
    stats, found = search_graph(g, mode, prune, orientable_only)
    out = []
    for sig, (labels, tri) in found.items():
        out.append((sig, labels, invariant_record(tri)))
    return code, stats, out


# ---------------------------------------------------------------------------
# orchestration


def seed_records() -> list:
    """Level-0 records for the closed census."""
    out = []
    for k, (name, sig) in enumerate(SEEDS.items()):
        tri = from_signature(sig)
        out.append(CensusRecord(0, sig, invariant_record(tri), name, (), f"class=0.{k}"))
    return out


def run_census(
    n: int,
    mode: str = "closed",
    prune=CRITERIA,
    orientable_only: bool = True,
    store: str | None = None,
    previous: list | None = None,
    workers: int = 1,
) -> CensusReport:
    """Run the census at ``n`` tetrahedra.

    Earlier classes come from ``previous`` (a list of CensusRecord), from
    the store directory, or (without a store) from running levels 1..n-1
    in memory first.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    bad = set(prune) - set(CRITERIA)
    if bad:
        raise ValueError(f"unknown prune criteria {sorted(bad)}")
    prune = tuple(c for c in CRITERIA if c in prune)
    if previous is None:
        previous = seed_records() if mode == "closed" else []
        for k in range(1, n):
            if store is not None:
                path = level_path(store, k, mode)
                if not os.path.exists(path):
                    raise MustRunPriorLevels(f"level {k} missing from store {store}")
                previous += load_level(path)[1]
            else:
                previous += run_census(k, mode, prune, orientable_only, None, list(previous), workers).records
    report = CensusReport(n, mode, prune)
    graphs = enumerate_quadgraphs(n)
    report.stages["graphs"] = len(graphs)
    if mode == "closed":
        graphs = [g for g in graphs if filter_useful_closed(g)]
    report.stages["useful graphs"] = len(graphs)
    jobs = [(str(g), mode, prune, orientable_only) for g in graphs]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_graph_job, jobs))
    else:
        results = [_graph_job(j) for j in jobs]
    found = {}
    for code, stats, out in results:
        report.stages.update(stats)
        for sig, labels, rec in out:
            if sig not in found:
                found[sig] = (code, labels, rec)
    report.stages["triangulations"] = len(found)
    reps = [(r.status.split("=", 1)[1], r.record) for r in previous if r.status.startswith("class=")]
    new = 0
    for sig in sorted(found):
        code, labels, rec = found[sig]
        match = next((cid for cid, other in reps if other.matches(rec)), None)
        if match is None:
            match = f"{n}.{new}"
            new += 1
            reps.append((match, rec))
            status = f"class={match}"
        else:
            status = f"duplicate-of:{match}"
        report.records.append(CensusRecord(n, sig, rec, code, labels, status))
    report.stages["new classes"] = new
    log.info("census n=%d mode=%s: %s", n, mode, dict(report.stages))
    if store is not None:
        store_level(store, report)
    return report


# ---------------------------------------------------------------------------
# store


def level_path(store: str, n: int, mode: str = "closed") -> str:
    sub = store if mode == "closed" else os.path.join(store, mode)
    return os.path.join(sub, f"level-{n}.census")


def store_level(store: str, report: CensusReport) -> str:
    """Write one level atomically (readers never see a partial file)."""
    path = level_path(store, report.n, report.mode)
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            fh.write(f"CENSUS v1 mode={report.mode} n={report.n}\n")
            for rec in sorted(report.records, key=lambda r: (r.n, r.signature)):
                fh.write(rec.to_line() + "\n")
        os.replace(tmp, path)
    except OSError as exc:
        raise StoreError(str(exc)) from exc
    return path


def load_level(path: str):
    """Return ``(header fields, records)`` of one stored level."""
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise StoreError(str(exc)) from exc
    if not lines or not lines[0].startswith("CENSUS v1 "):
        raise StoreError(f"{path}:1: bad header")
    header = dict(item.split("=", 1) for item in lines[0].split()[2:])
    records = []
    for i, line in enumerate(lines[1:], start=2):
        try:
            records.append(CensusRecord.from_line(line))
        except (ValueError, KeyError) as exc:
            raise StoreError(f"{path}:{i}: {exc}") from exc
    return header, records
