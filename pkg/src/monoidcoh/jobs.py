"""Declarative job files: parsing, validation, execution and result records.

A job is a JSON document::

    {
      "schema": "monoidcoh.job/1",
      "monoid": {"family": "free", "rank": 1},
      "ring": "F2",
      "module": {"kind": "constant", "preset": "augmentation"},
      "theory": "barr",
      "symmetry_mode": "shuffle",
      "dims": [5, 5],
      "internal_degrees": [1, 2, 3],
      "normalized": true,
      "budget": {"max_total_rank": 200000}
    }

``theory`` may also be a list.  ``internal_degrees`` is a list of
elements, ``{"from": a, "to": b}`` for the free monoid of rank one, or
``"all"`` (the unsliced complex, finite monoids only).  Setting
``"kind": "homology"`` computes chain-level Harrison or Hochschild homology
with a right module instead.
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor

from . import linalg
from .complexes import (DEFAULT_BUDGET, MODES, THEORIES, ChainComplexSlice, CochainComplexSlice)
from .monoid import (BeckModule, FreeMonoid, RightBeckModule, constant_module, cyclic_group,
                     cyclic_rees, projective_module, semilattice_chain, trivial_monoid,
                     validate_monoid, zero_module)
from .rings import RingError, parse_ring

SCHEMA = "monoidcoh.job/1"
RESULT_SCHEMA = "monoidcoh.result/1"


class JobError(ValueError):
    """The job document is malformed or refers to invalid objects."""


def load_job(path):
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise JobError(f"{path}: not valid JSON ({exc})") from exc
    return normalize_job(doc)


def normalize_job(doc):
    """Fill defaults and check field types; returns a plain dict."""
    if not isinstance(doc, dict):
        raise JobError("a job must be a JSON object")
    if doc.get("schema", SCHEMA) != SCHEMA:
        raise JobError(f"unsupported schema {doc.get('schema')!r}, expected {SCHEMA!r}")
    job = {
        "schema": SCHEMA,
        "monoid": doc.get("monoid"),
        "ring": doc.get("ring", "Q"),
        "module": doc.get("module", {"kind": "constant", "preset": "identity"}),
        "theory": doc.get("theory", "harrison"),
        "symmetry_mode": doc.get("symmetry_mode", "shuffle"),
        "dims": doc.get("dims"),
        "internal_degrees": doc.get("internal_degrees", "all"),
        "normalized": doc.get("normalized", True),
        "kind": doc.get("kind", "cohomology"),
        "budget": doc.get("budget", {}),
    }
    unknown = set(doc) - set(job)
    if unknown:
        raise JobError(f"unknown job fields: {', '.join(sorted(unknown))}")
    if not isinstance(job["monoid"], dict):
        raise JobError("'monoid' must be an object")
    theories = job["theory"] if isinstance(job["theory"], list) else [job["theory"]]
    for t in theories:
        if t not in THEORIES:
            raise JobError(f"unknown theory {t!r}")
    job["theory"] = theories
    if job["symmetry_mode"] not in MODES:
        raise JobError(f"unknown symmetry_mode {job['symmetry_mode']!r}")
    if job["kind"] not in ("cohomology", "homology"):
        raise JobError("'kind' must be 'cohomology' or 'homology'")
    if job["kind"] == "homology" and "barr" in theories:
        raise JobError("chain-level computation supports hochschild and harrison only")
    dims = job["dims"]
    if isinstance(dims, int):
        dims = [dims, dims]
    if (not isinstance(dims, list) or len(dims) != 2 or not all(isinstance(v, int) for v in dims)
            or dims[0] < 0 or dims[1] < dims[0]):
        raise JobError("'dims' must be an inclusive range [lo, hi] with 0 <= lo <= hi")
    job["dims"] = dims
    if not isinstance(job["normalized"], bool):
        raise JobError("'normalized' must be a boolean")
    if not isinstance(job["budget"], dict):
        raise JobError("'budget' must be an object")
    return job


def job_hash(job) -> str:
    return hashlib.sha256(canonical_json(job).encode()).hexdigest()


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------- object builders


def build_monoid(desc):
    desc = dict(desc)
    if "table" in desc:
        return validate_monoid(desc["table"], desc.get("identity", 0), desc.get("name"))
    family = desc.get("family")
    try:
        if family == "trivial":
            return trivial_monoid()
        if family in ("cyclic_group", "Z/n"):
            return cyclic_group(int(desc["n"]))
        if family == "semilattice_chain":
            return semilattice_chain(int(desc["n"]))
        if family == "cyclic_rees":
            return cyclic_rees(int(desc["i"]), int(desc["p"]))
        if family in ("free", "N"):
            return FreeMonoid(int(desc.get("rank", 1)))
    except KeyError as exc:
        raise JobError(f"monoid family {family!r} needs parameter {exc}") from exc
    raise JobError(f"unknown monoid family {family!r}")


def build_ring(desc):
    try:
        return parse_ring(desc)
    except RingError as exc:
        raise JobError(str(exc)) from exc


def build_module(X, ring, desc, side):
    kind = desc.get("kind", "constant")
    side = desc.get("side", side)
    if kind == "constant":
        return constant_module(X, ring, int(desc.get("rank", 1)),
                               desc.get("generator_images"), desc.get("preset", "identity"), side)
    if kind == "projective":
        return projective_module(X, ring, desc["at"], side)
    if kind == "zero":
        return zero_module(X, ring, side)
    if kind == "custom":
        cls = BeckModule if side == "left" else RightBeckModule
        if X.is_finite:
            ranks = {x: int(r) for x, r in enumerate(desc["ranks"])}
            actions = {}
            for key, m in desc.get("actions", {}).items():
                y, x = (int(v) for v in key.split(","))
                actions[(y, x)] = m
            return cls(X, ring, ranks=ranks, actions=actions, name=desc.get("name", "custom"))
        return cls(X, ring, generators=desc["generators"], rank=int(desc["rank"]),
                   name=desc.get("name", "custom"))
    raise JobError(f"unknown module kind {kind!r}")


def degrees_of(job, X):
    wanted = job["internal_degrees"]
    if wanted == "all":
        if not X.is_finite:
            raise JobError("internal_degrees 'all' needs a finite monoid")
        return [None]
    if isinstance(wanted, dict):
        if X.is_finite or X.rank != 1:
            raise JobError("degree ranges are only supported for the free monoid of rank one")
        return list(range(int(wanted["from"]), int(wanted["to"]) + 1))
    if not isinstance(wanted, list):
        raise JobError("'internal_degrees' must be 'all', a list, or a range object")
    out = []
    for d in wanted:
        d = tuple(d) if isinstance(d, list) else d
        if not X.contains(d):
            raise JobError(f"internal degree {d!r} is not an element of {X.name}")
        out.append(d)
    return out


def materialize(job):
    """Build (monoid, module, ring) from a normalized job."""
    X = build_monoid(job["monoid"])
    R = build_ring(job["ring"])
    side = "right" if job["kind"] == "homology" else "left"
    M = build_module(X, R, job["module"], side)
    if job["kind"] == "homology" and M.side != "right":
        raise JobError("homology jobs need a right module")
    if job["kind"] == "cohomology" and M.side != "left":
        raise JobError("cohomology jobs need a left module")
    return X, M, R


# ---------------------------------------------------------------- execution


def degree_key(d):
    if d is None:
        return "all"
    return list(d) if isinstance(d, tuple) else d


def _sort_key(d):
    if d is None:
        return (0, ())
    return (1, d if isinstance(d, tuple) else (d,))


def run_unit(job, theory, degree):
    """All requested dimensions of one (theory, degree) slice.

    Returns ``(records, seconds)``; records contain no timing data.
    """
    start = time.perf_counter()
    X, M, R = materialize(job)
    budget = int(job["budget"].get("max_total_rank", DEFAULT_BUDGET))
    lo, hi = job["dims"]
    records = []
    if job["kind"] == "cohomology":
        s = CochainComplexSlice(X, M, theory, degree, job["normalized"], job["symmetry_mode"], budget)
        for n in range(max(lo - 1, 0), hi + 1):
            s.verify(n)
        for n in range(lo, hi + 1):
            g = s.cohomology(n)
            records.append({
                "theory": theory, "n": n, "degree": degree_key(degree),
                "group": g.to_json(),
                "cochains": s.space(n).total_rank,
                "subspace": s.subspace(n).ncols,
                "graded": s.graded,
            })
    else:
        c = ChainComplexSlice(X, M, degree, job["normalized"], budget)
        for n in range(lo, hi + 1):
            g = c.harrison_homology(n) if theory == "harrison" else c.hochschild_homology(n)
            records.append({
                "theory": theory, "n": n, "degree": degree_key(degree),
                "group": g.to_json(),
                "chains": c.space(n).total_rank,
                "graded": c.graded,
            })
    return records, time.perf_counter() - start


_THEORY_ORDER = {t: i for i, t in enumerate(THEORIES)}


def _init_worker(cache_root):
    if cache_root is not None:
        from .cache import DiskCache

        linalg.set_cache(DiskCache(cache_root))


def run_job(job, jobs=1, cache=None):
    """Execute a normalized job; returns the result document."""
    X, M, R = materialize(job)
    degrees = degrees_of(job, X)
    units = [(t, d) for t in job["theory"] for d in degrees]
    results = {}
    if jobs <= 1 or len(units) <= 1:
        previous = linalg.set_cache(cache)
        try:
            for t, d in units:
                results[(t, _sort_key(d))] = run_unit(job, t, d)
        finally:
            linalg.set_cache(previous)
    else:
        root = str(cache.root) if cache is not None else None
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(root,)) as pool:
            futures = {(t, _sort_key(d)): pool.submit(run_unit, job, t, d) for t, d in units}
            for key, fut in futures.items():
                results[key] = fut.result()
    records, timings = [], []
    for key in sorted(results, key=lambda k: (_THEORY_ORDER[k[0]], k[1])):
        recs, secs = results[key]
        records.extend(recs)
        timings.append({"theory": key[0], "degree": recs[0]["degree"] if recs else None,
                        "seconds": round(secs, 6)})
    records.sort(key=lambda r: (_THEORY_ORDER[r["theory"]], r["n"], _sort_key(_as_degree(r["degree"]))))
    body = {
        "schema": RESULT_SCHEMA,
        "job": job,
        "job_hash": job_hash(job),
        "monoid": X.name,
        "module": M.name,
        "ring": R.name,
        "results": records,
    }
    return {"body": body, "timings": timings}


def _as_degree(d):
    if d == "all":
        return None
    return tuple(d) if isinstance(d, list) else d


def body_bytes(result) -> bytes:
    """Canonical serialization of the deterministic part of a result."""
    return canonical_json(result["body"]).encode()


def write_result(result, path):
    with open(path, "w") as fh:
        fh.write('{"body":')
        fh.write(canonical_json(result["body"]))
        fh.write(',\n"timings":')
        fh.write(canonical_json(result["timings"]))
        fh.write("}\n")


def summary_table(result) -> str:
    rows = [("theory", "n", "d", "group")]
    for r in result["body"]["results"]:
        d = r["degree"]
        rows.append((r["theory"], str(r["n"]), "all" if d == "all" else str(d), r["group"]["text"]))
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    lines = []
    for i, row in enumerate(rows):
        lines.append(" | ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if i == 0:
            lines.append("-+-".join("-" * w for w in widths))
    return "\n".join(lines)
