"""Census driver: source -> connectivity filter -> per-edge locking -> diamond check -> certificates.

Work is split per triangulation; every edge orbit of every admitted
triangulation is tested (no early exit on the first lock).  Results are merged
in canonical-code order, so output does not depend on the worker count.
Each finished order is written to the results directory and reused on re-runs.
"""

from __future__ import annotations

import json
import logging
import multiprocessing
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .birkhoff import (
    Configuration,
    birkhoff_diamond,
    check_appearance,
    endpoint_isomorphic,
    find_appearances,
    is_fundamental,
    locking_configuration,
)
from .codec import ChainWitness, LockCertificate, iter_planar_code, read_certificate, write_certificate
from .coloring import enumerate_identified, is_proper, partition
from .connectivity import connectivity_level
from .errors import InvalidGraph, KempeLockError
from .generator import generate_all
from .kempe import Verdict, chain_at, locking_test
from .plane_graph import PlaneTriangulation, canonical_code, delete_edge, edge_orbits, edge_ref

log = logging.getLogger(__name__)

RECORD_VERSION = 1


# -- configuration (de)serialisation ---------------------------------------


def config_to_dict(cfg: Configuration) -> dict:
    return {
        "order": cfg.order,
        "ring": list(cfg.ring),
        "interior": [list(p) for p in cfg.interior],
        "edges": sorted(list(e) for e in cfg.edges),
        "endpoints": list(cfg.endpoints),
        "names": list(cfg.names),
    }


def config_from_dict(d: dict) -> Configuration:
    return Configuration(
        order=d["order"],
        ring=tuple(d["ring"]),
        interior=tuple(tuple(p) for p in d["interior"]),
        edges=frozenset(tuple(e) for e in d["edges"]),
        endpoints=tuple(d["endpoints"]),
        names=tuple(d.get("names", ())),
    )


# -- records -------------------------------------------------------------


@dataclass
class LockedTriangulation:
    code: str
    locked_edges: list[tuple[int, int]]
    diamond_anchored: bool
    fundamental: bool
    certificates: list[LockCertificate] = field(default_factory=list)


@dataclass
class CensusRecord:
    order: int
    connectivity_filter: int
    mode: dict
    classes_examined: int = 0
    edge_tests: int = 0
    locked_triangulations: list[LockedTriangulation] = field(default_factory=list)
    vacuous: list[tuple[str, tuple[int, int]]] = field(default_factory=list)
    triangulations_with_diamond: int = 0
    diamond_appearances: int = 0
    non_sufficiency_witnesses: int = 0
    catalog: list[Configuration] = field(default_factory=list)
    new_fundamental: list[Configuration] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def locked_count(self) -> int:
        return len(self.locked_triangulations)

    def to_dict(self) -> dict:
        return {
            "version": RECORD_VERSION,
            "order": self.order,
            "connectivity_filter": self.connectivity_filter,
            "mode": self.mode,
            "classes_examined": self.classes_examined,
            "edge_tests": self.edge_tests,
            "locked_triangulations": [
                {
                    "code": lt.code,
                    "locked_edges": [list(e) for e in lt.locked_edges],
                    "diamond_anchored": lt.diamond_anchored,
                    "fundamental": lt.fundamental,
                    "certificates": [json.loads(write_certificate(c)) for c in lt.certificates],
                }
                for lt in self.locked_triangulations
            ],
            "vacuous": [[c, list(e)] for c, e in self.vacuous],
            "triangulations_with_diamond": self.triangulations_with_diamond,
            "diamond_appearances": self.diamond_appearances,
            "non_sufficiency_witnesses": self.non_sufficiency_witnesses,
            "catalog": [config_to_dict(c) for c in self.catalog],
            "new_fundamental": [config_to_dict(c) for c in self.new_fundamental],
            "elapsed": round(self.elapsed, 3),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CensusRecord":
        rec = cls(order=d["order"], connectivity_filter=d["connectivity_filter"], mode=d["mode"])
        rec.classes_examined = d["classes_examined"]
        rec.edge_tests = d["edge_tests"]
        rec.locked_triangulations = [
            LockedTriangulation(
                code=lt["code"],
                locked_edges=[tuple(e) for e in lt["locked_edges"]],
                diamond_anchored=lt["diamond_anchored"],
                fundamental=lt["fundamental"],
                certificates=[read_certificate(json.dumps(c)) for c in lt["certificates"]],
            )
            for lt in d["locked_triangulations"]
        ]
        rec.vacuous = [(c, tuple(e)) for c, e in d["vacuous"]]
        rec.triangulations_with_diamond = d["triangulations_with_diamond"]
        rec.diamond_appearances = d["diamond_appearances"]
        rec.non_sufficiency_witnesses = d["non_sufficiency_witnesses"]
        rec.catalog = [config_from_dict(c) for c in d["catalog"]]
        rec.new_fundamental = [config_from_dict(c) for c in d["new_fundamental"]]
        rec.elapsed = d["elapsed"]
        return rec


# -- per-triangulation work ------------------------------------------------


@dataclass
class _Examined:
    code: str
    rotation: tuple
    level: int
    edge_tests: int
    locked: list[tuple[tuple[int, int], list[tuple[int, int]]]]  # (representative, orbit)
    vacuous: list[tuple[int, int]]
    appearances: int
    non_sufficiency: int


def examine(rotation, min_level: int, diamond_stats: bool = True) -> _Examined | None:
    """Test every edge orbit of one triangulation; ``None`` if it fails the filter."""
    t = PlaneTriangulation.trusted(rotation)
    level = connectivity_level(t) if t.n >= 5 else 3
    if level < min_level:
        return None
    locked = []
    vacuous = []
    orbits = edge_orbits(t)
    for orbit in orbits:
        rep = orbit[0]
        res = locking_test(delete_edge(t, rep))
        if res.verdict is Verdict.LOCKED:
            locked.append((rep, orbit))
        elif res.verdict is Verdict.VACUOUS:
            vacuous.append(rep)
    apps = non_suff = 0
    if diamond_stats:
        locked_edges = {e for _, orbit in locked for e in orbit}
        found = find_appearances(t, birkhoff_diamond())
        apps = len(found)
        non_suff = sum(1 for a in found if edge_ref(*a.endpoints) not in locked_edges)
    return _Examined(canonical_code(t).hex(), t.rotation, level, len(orbits), locked, vacuous, apps, non_suff)


def _examine_star(args):
    return examine(*args)


def build_certificate(t: PlaneTriangulation, e: tuple[int, int], level: int | None = None) -> LockCertificate:
    """Certificate for a locked edge ``e`` of ``t``."""
    g = delete_edge(t, e)
    x, y = g.x, g.y
    witnesses = []
    for c in enumerate_identified(g):
        k = c[x]
        chains = {j: sorted(chain_at(g, c, x, (k, j)).vertices) for j in range(1, 5) if j != k}
        witnesses.append(ChainWitness(list(c), chains))
    apps = find_appearances(t, birkhoff_diamond(), anchor=(x, y))
    diamond = apps[0].as_dict(birkhoff_diamond()) if apps else None
    return LockCertificate(
        graph=[list(r) for r in t.rotation],
        order=t.n,
        locked_edge=(x, y),
        connectivity=level if level is not None else connectivity_level(t),
        distinct_coloring_count=len(witnesses),
        chain_witnesses=witnesses,
        diamond=diamond,
        code=canonical_code(t).hex(),
    )


# -- driver ---------------------------------------------------------------


def _record_path(out_dir: Path, order: int, level: int, mode: dict) -> Path:
    tag = mode["kind"]
    if tag == "ingested":
        tag += "-" + mode["fingerprint"][:12]
    return out_dir / f"order{order:02d}-c{level}-{tag}.json"


def _pool_map(tasks: Iterable, jobs: int) -> Iterator:
    if jobs <= 1:
        for args in tasks:
            yield _examine_star(args)
        return
    with multiprocessing.Pool(jobs) as pool:
        yield from pool.imap(_examine_star, tasks, chunksize=64)


def census_order(order: int, graphs: Iterable[PlaneTriangulation], connectivity: int, mode: dict,
                 catalog: Sequence[Configuration], jobs: int = 1, diamond_stats: bool = True) -> CensusRecord:
    """Run one order over an already-chosen stream of triangulations."""
    start = time.perf_counter()
    rec = CensusRecord(order=order, connectivity_filter=connectivity, mode=mode, catalog=list(catalog))
    tasks = ((t.rotation, connectivity, diamond_stats) for t in graphs if t.n == order)
    results = [r for r in _pool_map(tasks, jobs) if r is not None]
    results.sort(key=lambda r: r.code)
    for r in results:
        rec.classes_examined += 1
        rec.edge_tests += r.edge_tests
        rec.diamond_appearances += r.appearances
        rec.non_sufficiency_witnesses += r.non_sufficiency
        rec.triangulations_with_diamond += bool(r.appearances)
        rec.vacuous.extend((r.code, e) for e in r.vacuous)
        if not r.locked:
            continue
        t = PlaneTriangulation(r.rotation)
        certs = [build_certificate(t, rep, r.level) for rep, _ in r.locked]
        edges = sorted(e for _, orbit in r.locked for e in orbit)
        configs = [locking_configuration(t, rep) for rep, _ in r.locked]
        fundamental = all(is_fundamental(k, catalog) for k in configs)
        for k in configs:
            if is_fundamental(k, catalog) and not any(endpoint_isomorphic(k, m) for m in rec.new_fundamental):
                rec.new_fundamental.append(k)
        rec.locked_triangulations.append(LockedTriangulation(
            code=r.code,
            locked_edges=edges,
            diamond_anchored=all(c.diamond is not None for c in certs),
            fundamental=fundamental,
            certificates=certs,
        ))
    rec.elapsed = time.perf_counter() - start
    return rec


def parse_orders(text: str) -> list[int]:
    """``"12"``, ``"6..11"`` or ``"6..11,13"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..")
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


def run_census(orders: Sequence[int], connectivity: int = 4, source: bytes | str | Path | None = None,
               jobs: int = 1, out_dir: str | Path | None = None, catalog: Sequence[Configuration] | None = None,
               diamond_stats: bool = True, max_order: int | None = None) -> list[CensusRecord]:
    """One ``CensusRecord`` per order.

    ``source`` is ``None`` for built-in exhaustive generation, or planar_code
    bytes / a path to a planar_code file.  ``catalog`` defaults to the Birkhoff
    diamond; configurations found fundamental at one order join the catalog
    for the next.
    """
    import hashlib

    catalog = list(catalog) if catalog is not None else [birkhoff_diamond()]
    data = None
    mode: dict
    if source is None:
        mode = {"kind": "exhaustive"}
    else:
        data = source if isinstance(source, bytes) else Path(source).read_bytes()
        mode = {"kind": "ingested", "fingerprint": hashlib.sha256(data).hexdigest()}
    out = Path(out_dir) if out_dir is not None else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
    records = []
    for order in orders:
        path = _record_path(out, order, connectivity, mode) if out is not None else None
        if path is not None and path.exists():
            rec = CensusRecord.from_dict(json.loads(path.read_text()))
            log.info("order %d: reusing %s", order, path)
        else:
            if data is None:
                graphs = generate_all(order, connectivity, max_order=max_order)
            else:
                graphs = (t for t in iter_planar_code(data) if t.n == order)
            rec = census_order(order, graphs, connectivity, mode, catalog, jobs, diamond_stats)
            if path is not None:
                tmp = path.with_suffix(".tmp")
                tmp.write_text(json.dumps(rec.to_dict(), indent=1) + "\n")
                tmp.replace(path)
                cert_dir = out / "certificates"
                cert_dir.mkdir(exist_ok=True)
                for lt in rec.locked_triangulations:
                    for c in lt.certificates:
                        name = f"order{c.order:02d}-{c.code[:16]}-{c.locked_edge[0]}_{c.locked_edge[1]}.json"
                        (cert_dir / name).write_text(write_certificate(c))
        log.info("order %d: %d classes, %d locked", order, rec.classes_examined, rec.locked_count)
        catalog = catalog + [k for k in rec.new_fundamental if not any(endpoint_isomorphic(k, m) for m in catalog)]
        records.append(rec)
    return records


def load_records(directory: str | Path) -> list[CensusRecord]:
    paths = sorted(Path(directory).glob("order*.json"))
    return [CensusRecord.from_dict(json.loads(p.read_text())) for p in paths]


# -- verification ---------------------------------------------------------


@dataclass
class Verification:
    ok: bool
    reasons: list[str]

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(c: LockCertificate) -> Verification:
    """Rebuild everything from ``c.graph`` and compare with every other field."""
    reasons: list[str] = []
    try:
        t = PlaneTriangulation(c.graph)
    except (InvalidGraph, TypeError, ValueError) as exc:
        return Verification(False, [f"graph invalid: {exc}"])
    if c.order != t.n:
        reasons.append(f"order {c.order} != {t.n}")
    if c.code != canonical_code(t).hex():
        reasons.append("canonical code mismatch")
    level = connectivity_level(t) if t.n >= 5 else 3
    if c.connectivity != level:
        reasons.append(f"connectivity {c.connectivity} != {level}")
    x, y = c.locked_edge
    if not (0 <= x < t.n and 0 <= y < t.n) or x == y or y not in t.adj[x]:
        return Verification(False, reasons + [f"locked_edge {c.locked_edge} is not an edge"])
    try:
        g = delete_edge(t, (x, y))
    except KempeLockError as exc:
        return Verification(False, reasons + [f"cannot delete edge: {exc}"])
    res = locking_test(g)
    if res.verdict is not Verdict.LOCKED:
        reasons.append(f"edge is {res.verdict.value}, not locked")
    colorings = list(enumerate_identified(g))
    if c.distinct_coloring_count != len(colorings):
        reasons.append(f"distinct_coloring_count {c.distinct_coloring_count} != {len(colorings)}")
    expected = {partition(col) for col in colorings}
    claimed = set()
    for i, w in enumerate(c.chain_witnesses):
        col = w.coloring
        if len(col) != t.n or any(a not in (1, 2, 3, 4) for a in col):
            reasons.append(f"witness {i}: malformed colouring")
            continue
        if not is_proper(g, col) or col[x] != col[y]:
            reasons.append(f"witness {i}: not a proper colouring with x, y equal")
            continue
        claimed.add(partition(col))
        k = col[x]
        if set(w.chains) != {j for j in range(1, 5) if j != k}:
            reasons.append(f"witness {i}: chains must be given for exactly the three colours other than {k}")
            continue
        for j, verts in w.chains.items():
            true = chain_at(g, col, x, (k, j)).vertices
            if set(verts) != true:
                reasons.append(f"witness {i}: {k}-{j} chain does not match")
            elif y not in true:
                reasons.append(f"witness {i}: {k}-{j} chain misses y")
    if len(claimed) != len(c.chain_witnesses) or claimed != expected:
        reasons.append("chain witnesses do not cover exactly the distinct identified colourings")
    cfg = birkhoff_diamond()
    if c.diamond is None:
        if find_appearances(t, cfg, anchor=(x, y)):
            reasons.append("diamond omitted although an anchored appearance exists")
    else:
        problems = diamond_problems(t, c.diamond, (x, y))
        reasons.extend(f"diamond: {p}" for p in problems)
    return Verification(not reasons, reasons)


def diamond_problems(t: PlaneTriangulation, diamond: dict[str, int], edge: tuple[int, int]) -> list[str]:
    cfg = birkhoff_diamond()
    if set(diamond) != set(cfg.names):
        return ["map keys are not the diamond's vertices"]
    mapping = [diamond[name] for name in cfg.names]
    problems = check_appearance(t, cfg, mapping)
    ends = {mapping[cfg.endpoints[0]], mapping[cfg.endpoints[1]]}
    if ends != set(edge):
        problems.append("endpoints are not the locked edge")
    return problems


@dataclass
class ConjectureReport:
    locked_edges: int = 0
    violations: list[dict] = field(default_factory=list)
    non_sufficiency_witnesses: int = 0
    multi_edge_locks: list[str] = field(default_factory=list)
    vacuous: int = 0
    degree_failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return asdict(self) | {"ok": self.ok}


def check_conjecture(records: CensusRecord | Sequence[CensusRecord]) -> ConjectureReport:
    """Every locked edge must carry a valid Birkhoff appearance anchored at its endpoints."""
    if isinstance(records, CensusRecord):
        records = [records]
    rep = ConjectureReport()
    for rec in records:
        rep.non_sufficiency_witnesses += rec.non_sufficiency_witnesses
        rep.vacuous += len(rec.vacuous)
        for lt in rec.locked_triangulations:
            rep.locked_edges += len(lt.locked_edges)
            if len(lt.locked_edges) > 1:
                rep.multi_edge_locks.append(lt.code)
            if not lt.certificates:
                rep.violations.append({"code": lt.code, "reason": "no certificate"})
            for c in lt.certificates:
                try:
                    t = PlaneTriangulation(c.graph)
                except InvalidGraph as exc:
                    rep.violations.append({"code": lt.code, "reason": f"graph invalid: {exc}"})
                    continue
                x, y = c.locked_edge
                if t.degree(x) < 6 or t.degree(y) < 6:
                    rep.degree_failures.append({"code": lt.code, "edge": [x, y]})
                if c.diamond is None:
                    rep.violations.append({"code": lt.code, "edge": [x, y], "reason": "no anchored diamond"})
                    continue
                problems = diamond_problems(t, c.diamond, (x, y))
                if problems:
                    rep.violations.append({"code": lt.code, "edge": [x, y], "reason": "; ".join(problems)})
    return rep
