"""Experiment runner: build the regions once, run named checks, emit a JSON report.

Three nested complexes are built per run:

* ``ambient``: every vertex of the window (no f cut), where blankets live;
* ``base``:    its full subcomplex on f <= q;
* ``region``:  the full subcomplex of ``base`` on chi >= 0.

Checks only read these, so they can run concurrently; the report is
assembled afterwards in a fixed order and serialized with sorted keys.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .complex import (ComplexError, CubicalComplex, RegionSpec, RegionTooLarge, SimplicialComplex,
                      connected_components, default_seeds, enumerate_region, full_subcomplex,
                      is_flag)
from .core import Character, ZeroCharacterError, chi_eval, decode, encode, identity, transposition_tau
from .fixtures import classical_table
from .homology import acyclicity_bound, reduced_homology
from .morse import (BoundaryVertexError, WitnessError, blanket_components, check_intersections,
                    cover_pieces, directed_cells, nerve, piece_complex, piece_types,
                    ray_germ_invariant, sphere_witness, strong_nerve_hypotheses)

log = logging.getLogger(__name__)

REGION_CHECKS = ("region", "flag", "descending_links", "ascending_links", "blanket_convexity",
                 "blanket_intersections", "germ", "cover", "nerve", "witness", "strong_nerve")
ALL_CHECKS = REGION_CHECKS + ("fixtures",)
NEEDS_CHI = {"ascending_links", "cover", "nerve", "witness", "strong_nerve"}
EXAMPLES_SHOWN = 5


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    n: int = 2
    chi: Optional[tuple] = None
    f_bound: Optional[int] = None
    window: object = 2
    window_mode: str = "codomain"
    seeds: Optional[list] = None          # canonical encodings
    name: str = "experiment"
    checks: tuple = REGION_CHECKS
    jobs: int = 1
    allow_large: bool = False
    max_vertices: int = 500_000
    timings: bool = False

    def __post_init__(self):
        if isinstance(self.chi, str):
            self.chi = parse_chi(self.chi)
        if self.chi is not None:
            self.chi = tuple(int(a) for a in self.chi)
        if isinstance(self.window, list):
            self.window = tuple(self.window)
        self.checks = tuple(self.checks)

    def validate(self) -> "ExperimentConfig":
        if not isinstance(self.n, int) or self.n < 2:
            raise ConfigError(f"n must be an integer >= 2, got {self.n!r}")
        if self.n >= 4 and not self.allow_large:
            raise ConfigError("n >= 4 needs allow_large (--allow-large)")
        unknown = [c for c in self.checks if c not in ALL_CHECKS]
        if unknown:
            raise ConfigError(f"unknown checks {unknown}; choose from {list(ALL_CHECKS)}")
        if len(set(self.checks)) != len(self.checks):
            raise ConfigError("a check is listed twice")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if self.chi is not None:
            if len(self.chi) != self.n:
                raise ConfigError(f"chi has {len(self.chi)} coefficients for n={self.n}")
            if len(set(self.chi)) == 1:
                raise ConfigError(f"chi={list(self.chi)} is the zero character")
        elif NEEDS_CHI & set(self.checks):
            raise ConfigError(f"checks {sorted(NEEDS_CHI & set(self.checks))} need a character")
        try:
            self.region_spec()
        except ComplexError as exc:
            raise ConfigError(str(exc)) from None
        if self.seeds is not None:
            for s in self.seeds:
                try:
                    v = decode(s)
                except ValueError as exc:
                    raise ConfigError(f"bad seed: {exc}") from None
                if v.n != self.n:
                    raise ConfigError(f"seed {s!r} is not in M_{self.n}")
        return self

    @property
    def character(self) -> Optional[Character]:
        return None if self.chi is None else Character(self.chi)

    def region_spec(self, chi: bool = False) -> RegionSpec:
        return RegionSpec(self.n, window=self.window, f_bound=self.f_bound,
                          chi=self.character if chi else None, window_mode=self.window_mode)

    def echo(self) -> dict:
        """Everything that determines the result (parallelism and timing excluded)."""
        spec = self.region_spec()
        return {"name": self.name, "n": self.n, "chi": None if self.chi is None else list(self.chi),
                "f_bound": spec.f_bound, "window": _jsonable(spec.window),
                "window_mode": self.window_mode,
                "seeds": None if self.seeds is None else list(self.seeds),
                "checks": list(self.checks), "max_vertices": self.max_vertices}

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        data = {k.replace("-", "_"): v for k, v in data.items()}
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        return cls(**data)


def parse_chi(text: str) -> tuple:
    try:
        return tuple(int(a) for a in text.replace(" ", "").split(",") if a)
    except ValueError:
        raise ConfigError(f"character must be comma-separated integers, got {text!r}") from None


def _jsonable(x):
    return list(x) if isinstance(x, tuple) else x


# -- context --------------------------------------------------------------------

class Context:
    """The sealed complexes of one run plus lazily built cover data."""

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.n = config.n
        self.chi = config.character
        spec = config.region_spec()
        self.spec = spec
        self.m = len(piece_types(self.chi)) if self.chi is not None else None
        seeds = [decode(s) for s in config.seeds] if config.seeds is not None else default_seeds(config.n)
        self.seeds = seeds
        wide = dataclasses.replace(spec, f_bound=_f_cap(spec))
        for s in seeds:
            if not wide.in_window(s):
                raise ConfigError(f"seed {encode(s)} lies outside the window")
        self.ambient = enumerate_region(seeds, wide, max_vertices=config.max_vertices)
        self.base = full_subcomplex(self.ambient, lambda v: sum(v.translations) <= spec.f_bound, spec)
        if self.chi is not None:
            rspec = config.region_spec(chi=True)
            self.region = full_subcomplex(self.base, lambda v: chi_eval(self.chi, v) >= 0, rspec)
        else:
            self.region = self.base
        self._pieces = None
        self._nerve = None

    @property
    def pieces(self):
        if self._pieces is None:
            self._pieces = cover_pieces(self.region, self.chi, self.ambient)
        return self._pieces

    @property
    def nerve(self):
        if self._nerve is None:
            self._nerve = nerve(self.pieces, self.region)
        return self._nerve

    def prepare(self, checks):
        # cover data is shared; build it before the checks fan out
        if {"cover", "nerve", "witness", "strong_nerve"} & set(checks):
            self.nerve


def _f_cap(spec: RegionSpec) -> int:
    """An f bound that cuts nothing inside the window."""
    if spec.window_mode == "codomain":
        return max(spec.f_bound, sum(spec.bounds))
    return max(spec.f_bound, spec.n * spec.translation_bound)


# -- checks ------------------------------------------------------------------------

def _record(name, ok, **extra) -> dict:
    rec = {"name": name, "status": "pass" if ok else "fail"}
    rec.update(extra)
    return rec


def _skipped(name, reason, **extra) -> dict:
    rec = {"name": name, "status": "skipped", "reason": reason}
    rec.update(extra)
    return rec


def check_region(ctx: Context) -> dict:
    comps = connected_components(ctx.region)
    R = ctx.region
    return _record("region", len(R.vertices) > 0,
                   counts={"ambient": ctx.ambient.counts(), "base": ctx.base.counts(),
                           "region": R.counts()},
                   components=len(comps), degrees=[0],
                   betti=[len(comps) - 1], torsion=[[]], seeds=len(ctx.seeds))


def check_flag(ctx: Context) -> dict:
    X = ctx.base
    tested = skipped = 0
    bad = []
    for v in X.vertices:
        if not X.is_interior(v):
            skipped += 1
            continue
        tested += 1
        if not is_flag(X.link(v)):
            bad.append(encode(v))
    if not tested:
        return _skipped("flag", "no interior vertices", skipped_boundary=skipped)
    return _record("flag", not bad, tested=tested, skipped_boundary=skipped,
                   failures=len(bad), examples=bad[:EXAMPLES_SHOWN])


def _link_sweep(name, X, chi, vertices, ascending, need, want_nonempty=True):
    """Directed links at the given vertices; need = degree through which H~ must vanish."""
    tested = skipped = 0
    bad, tally = [], {}
    for v in vertices:
        faces, truncated = directed_cells(X, chi, v, ascending)
        if truncated:
            skipped += 1
            continue
        tested += 1
        L = SimplicialComplex.from_faces(faces)
        H = reduced_homology(L, max(need, 0))
        bound = acyclicity_bound(H)
        key = str(bound)
        tally[key] = tally.get(key, 0) + 1
        if (want_nonempty and not L.vertices) or bound < need:
            bad.append(encode(v))
    if not tested:
        return _skipped(name, "no interior vertices at the tested levels", skipped_boundary=skipped)
    return _record(name, not bad, tested=tested, skipped_boundary=skipped, degrees=[need],
                   acyclicity_bounds=dict(sorted(tally.items())), failures=len(bad),
                   examples=bad[:EXAMPLES_SHOWN])


def check_descending(ctx: Context) -> dict:
    n = ctx.n
    verts = [v for v in ctx.base.vertices if sum(v.translations) > 2 * n - 1]
    return _link_sweep("descending_links", ctx.base, None, verts, False, n - 2)


def check_ascending(ctx: Context) -> dict:
    return _link_sweep("ascending_links", ctx.region, ctx.chi, ctx.region.vertices, True,
                       ctx.m - 2)


def _blanket_sets(n):
    return [(i,) for i in range(1, n + 1)] + list(combinations(range(1, n + 1), 2))


def check_blanket_convexity(ctx: Context) -> dict:
    X = ctx.base
    Ks = _blanket_sets(ctx.n)
    tested = skipped = 0
    bad = []
    for v in X.vertices:
        if not X.is_interior(v):
            skipped += 1
            continue
        cells = X.link_cells(v)
        outer = SimplicialComplex.from_faces([f for f, _, _ in cells])
        corner_m = [[X.vertices[c].translations for c in X.corners(b, mask)]
                    for _, b, mask in cells]
        for K in Ks:
            if any(v.translations[i - 1] > 0 for i in K):
                continue
            tested += 1
            inner = SimplicialComplex.from_faces(
                [f for (f, _, _), ms in zip(cells, corner_m)
                 if all(m[i - 1] <= 0 for m in ms for i in K)])
            if inner != outer.induced(inner.vertices):
                bad.append(f"K={list(K)} {encode(v)}")
    return _record("blanket_convexity", not bad and tested > 0, tested=tested,
                   skipped_boundary=skipped, blanket_sets=[list(K) for K in Ks],
                   failures=len(bad), examples=bad[:EXAMPLES_SHOWN])


def check_blanket_intersections(ctx: Context) -> dict:
    A = ctx.ambient
    comp_of = {}
    for i in range(1, ctx.n + 1):
        comp_of[(i,)] = {v: b.index for b in blanket_components(A, (i,)) for v in b.vertices}
    pairs = bad = 0
    examples, per_pair = [], {}
    for i, j in combinations(range(1, ctx.n + 1), 2):
        joint = blanket_components(A, (i, j))
        groups = {}
        for v, a in comp_of[(i,)].items():
            b = comp_of[(j,)].get(v)
            if b is not None:
                groups.setdefault((a, b), set()).add(v)
        owner = {v: z.index for z in joint for v in z.vertices}
        count = 0
        for (a, b), verts in sorted(groups.items()):
            count += 1
            homes = {owner[v] for v in verts}
            joint_size = len(joint[next(iter(homes))].vertices) if len(homes) == 1 else None
            if len(homes) != 1 or joint_size != len(verts):
                bad += 1
                examples.append(f"Z{i}^{a + 1} meets Z{j}^{b + 1} in {len(homes)} blanket(s)")
        per_pair[f"{i}{j}"] = count
        pairs += count
    return _record("blanket_intersections", bad == 0 and pairs > 0, intersections=pairs,
                   by_pair=per_pair, failures=bad, examples=examples[:EXAMPLES_SHOWN])


def check_germ(ctx: Context) -> dict:
    A = ctx.ambient
    edges = bad = 0
    examples = []
    for a, b, i in A.edges():
        edges += 1
        u, w = A.vertices[a], A.vertices[b]
        for j in range(1, ctx.n + 1):
            if j != i and ray_germ_invariant(u, j) != ray_germ_invariant(w, j):
                bad += 1
                examples.append(f"t_{i} edge changes ray {j} at {encode(u)}")
    distinct = {str(i): ray_germ_invariant(identity(ctx.n), i)
                != ray_germ_invariant(transposition_tau(i, ctx.n), i) for i in range(1, ctx.n + 1)}
    return _record("germ", bad == 0 and all(distinct.values()), edges=edges, failures=bad,
                   id_vs_tau_distinct=distinct, examples=examples[:EXAMPLES_SHOWN])


def check_cover(ctx: Context) -> dict:
    R = ctx.region
    pieces = ctx.pieces
    covered = set().union(*(p.vertices for p in pieces)) if pieces else set()
    missing = [encode(v) for v in R.vertices if v not in covered]
    holders = {}
    for p in pieces:
        for v in p.vertices:
            holders.setdefault(R.index[v], set()).add(p.label)
    stray = 0
    for b, mask in R.cube_set:
        common = None
        for c in R.corners(b, mask):
            common = holders.get(c, set()) if common is None else common & holders.get(c, set())
        if not common:
            stray += 1
    disconnected = [str(p) for p in pieces
                    if len(connected_components(piece_complex(R, p.vertices))) != 1]
    by_type = {}
    for p in pieces:
        by_type[str(p.type)] = by_type.get(str(p.type), 0) + 1
    ok = not missing and not stray and not disconnected and bool(pieces)
    return _record("cover", ok, types=piece_types(ctx.chi), pieces=len(pieces), by_type=by_type,
                   uncovered_vertices=len(missing), uncovered_cubes=stray,
                   disconnected_pieces=disconnected[:EXAMPLES_SHOWN],
                   examples=missing[:EXAMPLES_SHOWN])


def check_nerve(ctx: Context) -> dict:
    N = ctx.nerve
    L = N.complex
    m = ctx.m
    H = reduced_homology(L, m - 1)
    comps = _simplicial_components(L)
    same_type = N.same_type_adjacent()
    nontrivial = not H.is_zero_in(m - 1)
    ok = nontrivial and not same_type and L.dimension <= m - 1
    if m == 1:
        ok = ok and len(L.vertices) >= 2
    return _record("nerve", ok, counts=L.counts(), dimension=L.dimension, components=comps,
                   degrees=list(range(m)), betti=H.betti, torsion=H.torsion,
                   same_type_adjacent=same_type, not_acyclic_in_degree=m - 1)


def _simplicial_components(L: SimplicialComplex) -> int:
    parent = list(range(len(L.vertices)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in L.simplices(1):
        parent[find(a)] = find(b)
    return len({find(a) for a in range(len(L.vertices))})


def check_witness(ctx: Context) -> dict:
    try:
        w = sphere_witness(ctx.n, ctx.chi, ctx.pieces, ctx.nerve)
    except WitnessError as exc:
        return _record("witness", False, error=str(exc))
    return _record("witness", w.cycle_is_nontrivial, witness=w.as_dict())


def check_strong_nerve(ctx: Context) -> dict:
    m = ctx.m
    up_to = max(m - 1, 1)
    hyp = strong_nerve_hypotheses(ctx.pieces, up_to, ctx.region)
    good = check_intersections(ctx.pieces, ctx.region, 2, lambda r: m - 2)
    good_bad = [r.as_dict() for r in good if not r.passed]
    degrees = list(range(up_to))
    HR = _reduced_homology_fast(ctx.region, up_to - 1)
    HL = reduced_homology(ctx.nerve.complex, up_to - 1)
    iso = all(HR.betti[k] == HL.betti[k] and HR.torsion[k] == HL.torsion[k] for k in degrees)
    ok = hyp["passed"] and not good_bad and iso
    return _record("strong_nerve", ok, up_to=up_to, checked=hyp["checked"],
                   by_r={str(k): v for k, v in hyp["by_r"].items()},
                   failed=len(hyp["failures"]), failures=hyp["failures"][:EXAMPLES_SHOWN],
                   pieces_and_pairs={"checked": len(good), "required_degree": m - 2,
                                     "failed": len(good_bad),
                                     "failures": good_bad[:EXAMPLES_SHOWN]},
                   degrees=degrees,
                   region={"betti": HR.betti, "torsion": HR.torsion},
                   nerve={"betti": HL.betti, "torsion": HL.torsion},
                   isomorphic_through=up_to - 1 if iso else None)


def _reduced_homology_fast(X: CubicalComplex, degree: int):
    """Degree 0 straight from the 1-skeleton; higher degrees via Smith form."""
    if degree > 0:
        return reduced_homology(X, degree)
    from .homology import HomologyResult
    comps = len(connected_components(X))
    return HomologyResult([max(comps - 1, 0)], [[]], True, empty=comps == 0, degrees=0)


def check_fixtures(ctx) -> dict:
    rows = classical_table()
    table = [{"name": r[0], "expected": {"betti": r[1], "torsion": r[2]},
              "computed": {"betti": r[3], "torsion": r[4]},
              "match": r[1] == r[3] and r[2] == r[4]} for r in rows]
    return _record("fixtures", all(t["match"] for t in table), table=table)


CHECKS = {
    "region": check_region, "flag": check_flag, "descending_links": check_descending,
    "ascending_links": check_ascending, "blanket_convexity": check_blanket_convexity,
    "blanket_intersections": check_blanket_intersections, "germ": check_germ,
    "cover": check_cover, "nerve": check_nerve, "witness": check_witness,
    "strong_nerve": check_strong_nerve, "fixtures": check_fixtures,
}


# -- running --------------------------------------------------------------------------

@dataclass
class Report:
    config: dict
    region: Optional[dict]
    checks: list
    error: Optional[str] = None
    context: object = field(default=None, repr=False, compare=False)

    @property
    def passed(self) -> bool:
        return self.error is None and all(c["status"] != "fail" for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def as_dict(self) -> dict:
        out = {"config": self.config, "region": self.region, "checks": self.checks,
               "summary": {c["name"]: c["status"] for c in self.checks},
               "passed": self.passed}
        if self.error is not None:
            out["error"] = self.error
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    def check(self, name) -> dict:
        for c in self.checks:
            if c["name"] == name:
                return c
        raise KeyError(name)


def _run_check(name, ctx, timings):
    t0 = time.perf_counter()
    try:
        rec = CHECKS[name](ctx)
    except (BoundaryVertexError, ComplexError, ZeroCharacterError) as exc:
        rec = _record(name, False, error=f"{type(exc).__name__}: {exc}")
    if timings:
        rec["wall_time"] = round(time.perf_counter() - t0, 3)
    log.info("check %s: %s", name, rec["status"])
    return rec


def run(config: ExperimentConfig) -> Report:
    """Build the regions and run the selected checks; raises ConfigError on bad input."""
    config.validate()
    echo = config.echo()
    region_checks = [c for c in config.checks if c in REGION_CHECKS]
    ctx = None
    region = None
    if region_checks:
        try:
            ctx = Context(config)
        except RegionTooLarge as exc:
            checks = [_skipped(c, "region not built") for c in config.checks]
            return Report(echo, None, checks, error=str(exc))
        region = {"vertices": len(ctx.region.vertices), "counts": ctx.region.counts(),
                  "ambient_vertices": len(ctx.ambient.vertices),
                  "base_vertices": len(ctx.base.vertices), "spec": ctx.spec.describe()}
        ctx.prepare(region_checks)
    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            futures = [pool.submit(_run_check, c, ctx, config.timings) for c in config.checks]
            checks = [f.result() for f in futures]
    else:
        checks = [_run_check(c, ctx, config.timings) for c in config.checks]
    return Report(echo, region, checks, context=ctx)


def write_report(report: Report, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(report.to_json())


def checks_csv(report: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check", "status", "tested", "skipped_boundary", "failures"])
    for c in report.checks:
        w.writerow([c["name"], c["status"], c.get("tested", ""), c.get("skipped_boundary", ""),
                    c.get("failures", "") if not isinstance(c.get("failures"), list)
                    else len(c["failures"])])
    return buf.getvalue()


# -- stability sweep ------------------------------------------------------------------

def _merges(small, large) -> int:
    """How many groups of ``small`` (vertex sets) got joined inside ``large``."""
    where = {}
    for k, g in enumerate(large):
        for v in g:
            where[v] = k
    seen = {}
    merges = 0
    for g in small:
        homes = {where[v] for v in g if v in where}
        for h in homes:
            if h in seen:
                merges += 1
            seen[h] = True
        merges += max(len(homes) - 1, 0)    # a group split apart is just as suspicious
    return merges


def _region_groups(ctx):
    R = ctx.region
    return [frozenset(R.vertices[k] for k in comp) for comp in connected_components(R)]


def _nerve_groups(ctx):
    """Nerve components as vertex sets of the region (union of their pieces)."""
    L = ctx.nerve.complex
    parent = list(range(len(L.vertices)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in L.simplices(1):
        parent[find(a)] = find(b)
    groups = {}
    for k, label in enumerate(L.vertices):
        groups.setdefault(find(k), set()).update(ctx.nerve.piece(label).vertices)
    return [frozenset(g) for g in groups.values()]


def stability_sweep(config: ExperimentConfig, windows) -> dict:
    """Rerun the checks for each window and look for merges between consecutive sizes."""
    windows = list(windows)
    if not windows:
        raise ConfigError("empty window list")
    keys = [sum(w) if isinstance(w, (tuple, list)) else w * config.n for w in windows]
    if keys != sorted(keys) or len(set(keys)) != len(keys):
        raise ConfigError("windows must be strictly increasing")
    rows, reports = [], []
    prev = core = None
    statuses = None
    stable = True
    for w in windows:
        cfg = dataclasses.replace(config, window=tuple(w) if isinstance(w, list) else w)
        rep = run(cfg)
        reports.append(rep.as_dict())
        ctx = rep.context
        row = {"window": _jsonable(cfg.window), "passed": rep.passed,
               "statuses": {c["name"]: c["status"] for c in rep.checks}}
        if ctx is not None:
            groups = _region_groups(ctx)
            row.update(vertices=len(ctx.region.vertices), counts=ctx.region.counts(),
                       components=len(groups))
            if core is None:
                core = set(ctx.region.vertices)
            row["core_components"] = sum(1 for g in groups if g & core)
            ngroups = None
            if ctx.chi is not None:
                L = ctx.nerve.complex
                ngroups = _nerve_groups(ctx)
                H = reduced_homology(L, ctx.m - 1)
                row.update(pieces=len(L.vertices), nerve_counts=L.counts(),
                           nerve_betti=H.betti, nerve_components=len(ngroups),
                           nerve_core_components=sum(1 for g in ngroups if g & core))
            merged = 0
            if prev is not None:
                merged = _merges(prev[0], groups)
                if ngroups is not None and prev[1] is not None:
                    merged += _merges(prev[1], ngroups)
            row["merges_from_previous"] = merged
            if merged:
                stable = False
                rows[-1]["reliable"] = False
            row["reliable"] = True
            prev = (groups, ngroups)
        if statuses is not None and row["statuses"] != statuses:
            stable = False
        statuses = row["statuses"]
        rows.append(row)
        rep.context = None
    for key in ("core_components", "nerve_core_components"):
        vals = {r.get(key) for r in rows}
        if len(vals) > 1:
            stable = False
    return {"config": config.echo(), "windows": [_jsonable(w) for w in windows],
            "rows": rows, "stable": stable, "passed": stable and all(r["passed"] for r in rows),
            "reports": reports}


SWEEP_COLUMNS = ["window", "vertices", "counts", "components", "core_components", "pieces",
                 "nerve_counts", "nerve_betti", "nerve_components", "nerve_core_components",
                 "merges_from_previous", "reliable", "passed"]


def sweep_csv(sweep: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for r in sweep["rows"]:
        out = []
        for c in SWEEP_COLUMNS:
            val = r.get(c, "")
            if isinstance(val, (list, tuple)):
                val = " ".join(map(str, val))
            out.append(val)
        w.writerow(out)
    return buf.getvalue()
