"""Batch command-line interface with content-addressed JSON artifacts.

Every command resolves a job configuration to a deterministic artifact in
the output directory, keyed by a hash of (code version, command, config).
With caching enabled, reruns reuse artifacts byte for byte.  Exit codes:
0 success, 2 verification mismatch, 3 resource cap exceeded, 4 usage or
missing input.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import __version__ as CODE_VERSION
from .cones import double_description, intersect, kronecker_halfspaces
from .errors import (IncoherentGradingError, KrontoricError,
                     ResourceCapError)
from .lattice import hilbert_basis, quiver_budget_rows, standard_height
from .matching import (GrassmannianSpec, grading_c0, grading_c2,
                       induced_matching_field, mf_cone, sagbi_pipeline)
from .mirror import classical_period, laurent_from_rays, newton_invariants
from .polytopes import classify_toric, normal_fan_rays, slice_polytope
from .quiver import QuiverSpec
from .reproduce import EXAMPLES, format_report, run_example
from . import serialize as ser
from .semiinvariants import Grading


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common_flags(p):
    p.add_argument("--n", type=int, required=True, help="number of arrows")
    p.add_argument("--r1", type=int, required=True)
    p.add_argument("--r2", type=int, required=True)
    p.add_argument("--grading", default="c0",
                   help="c0, c2, or a path to a grading JSON file")
    p.add_argument("--out", default="krontoric-out",
                   help="artifact directory")
    p.add_argument("--no-cache", action="store_true",
                   help="recompute even when a cached artifact exists")
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--certify-window", type=int, default=2)
    p.add_argument("--orbit-cap", type=int, default=50_000_000)
    p.add_argument("--point-cap", type=int, default=5_000_000)


def build_parser():
    parser = _Parser(prog="krontoric",
                     description="toric degeneration data for Kronecker "
                                 "quiver moduli spaces")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, descr in [
            ("cone", "graded cone of the chosen degeneration"),
            ("generators", "Hilbert basis of the cone's monoid"),
            ("polytope", "height-one slice polytope"),
            ("fan", "normal fan rays of the slice polytope"),
            ("classify", "toric classification of the fan"),
            ("mirror", "vertex Laurent polynomial of the spanning polytope"),
            ("period", "classical period of the mirror"),
            ("verify-sagbi", "full matching-field verification report")]:
        p = sub.add_parser(name, help=descr)
        _common_flags(p)
        if name == "period":
            p.add_argument("--terms", type=int, default=21,
                           help="number of period terms")
    p = sub.add_parser("reproduce", help="rerun a worked example and diff "
                                         "every checkable constant")
    p.add_argument("example", choices=EXAMPLES)
    p.add_argument("--out", default="krontoric-out")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--slow", action="store_true",
                   help="include the large orbit expansions and the "
                        "high-dimensional period pattern")
    return parser


# -- configuration, caching -------------------------------------------------

class Job:
    def __init__(self, args):
        try:
            self.spec = QuiverSpec(args.n, args.r1, args.r2)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        self.grading_name = args.grading
        self.max_degree = args.max_degree
        self.certify_window = args.certify_window
        self.orbit_cap = args.orbit_cap
        self.point_cap = args.point_cap
        self.out = Path(args.out)
        self.cache = not args.no_cache
        if self.max_degree < 1 or self.certify_window < 0 or \
                self.orbit_cap < 1 or self.point_cap < 1:
            raise UsageError("caps and degrees must be positive")

    def grading(self) -> Grading:
        if self.grading_name == "c0":
            return grading_c0(self.spec)
        if self.grading_name == "c2":
            return grading_c2(self.spec)
        path = Path(self.grading_name)
        if not path.exists():
            raise UsageError(f"grading file not found: {path}")
        data = json.loads(path.read_text())
        g = ser.grading_from_json(data)
        if g.spec != self.spec:
            raise UsageError("grading file is for a different quiver")
        return g

    def config_dict(self, command):
        return {
            "code": CODE_VERSION,
            "schema": ser.SCHEMA_VERSION,
            "command": command,
            "n": self.spec.n, "r1": self.spec.r1, "r2": self.spec.r2,
            "grading": self.grading_name,
            "max_degree": self.max_degree,
            "certify_window": self.certify_window,
            "orbit_cap": self.orbit_cap,
            "point_cap": self.point_cap,
        }

    def key(self, command) -> str:
        blob = json.dumps(self.config_dict(command), sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def artifact_path(self, command) -> Path:
        cache_dir = os.environ.get("KRONTORIC_CACHE")
        base = Path(cache_dir) if cache_dir else self.out
        return base / f"{command}-{self.key(command)}.json"


def _dump(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode()


def _write_artifact(path: Path, obj):
    path.parent.mkdir(parents=True, exist_ok=True)
    lock = path.parent / ".lock"
    for _ in range(600):
        try:
            fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
            break
        except FileExistsError:
            time.sleep(0.05)
    else:
        raise KrontoricError(f"could not acquire cache lock {lock}")
    try:
        path.write_bytes(_dump(obj))
    finally:
        os.close(fd)
        os.unlink(lock)


def _cached(job: Job, command, compute, summarize):
    """Load or compute the artifact for `command`; print a summary line."""
    path = job.artifact_path(command)
    if job.cache and path.exists():
        data = json.loads(path.read_text())
        print(f"{command}: cached {path}")
        print(summarize(data))
        return data
    data = compute()
    data["config"] = job.config_dict(command)
    _write_artifact(path, data)
    print(f"{command}: wrote {path}")
    print(summarize(data))
    return data


# -- the artifact pipeline --------------------------------------------------

def _cone_artifact(job: Job):
    def compute():
        if job.grading_name == "c0":
            cone = kronecker_halfspaces(job.spec)
        else:
            grading = job.grading()
            mfm = induced_matching_field(grading,
                                         GrassmannianSpec(job.spec, "minus"))
            mfp = induced_matching_field(grading,
                                         GrassmannianSpec(job.spec, "plus"))
            cone = intersect(mf_cone(mfm), mf_cone(mfp))
        double_description(cone)
        return ser.cone_to_json(cone)

    def summarize(d):
        return (f"  ambient dim {d['ambient_dim']}, {len(d['rays'])} rays, "
                f"{len(d['facets'])} facets, pointed={d['pointed']}")

    return _cached(job, "cone", compute, summarize)


def _load_cone(job: Job):
    data = _cone_artifact(job)
    return ser.cone_from_json(data, quiver=job.spec)


def _monoid_membership(job: Job):
    if job.grading_name == "c0":
        return None
    from .matching import ColumnCatalog, ColumnFactorizer
    grading = job.grading()
    fac = []
    for side in ("minus", "plus"):
        mf = induced_matching_field(grading, GrassmannianSpec(job.spec, side))
        fac.append(ColumnFactorizer(ColumnCatalog(mf)))
    return lambda v: fac[0].feasible(v) and fac[1].feasible(v)

def _generators_artifact(job: Job):
    cone = _load_cone(job)

    def compute():
        hres = hilbert_basis(
            cone, standard_height(job.spec),
            max_degree=job.max_degree, certify_window=job.certify_window,
            monoid_membership=_monoid_membership(job),
            budgets_for=lambda h: quiver_budget_rows(job.spec, h),
            cap=job.point_cap)
        return {
            "schema": f"generators@{ser.SCHEMA_VERSION}",
            "generators": [{"height": h, "entries": list(map(int, v))}
                           for h, v in hres.generators],
            "certified_up_to": hres.certified_up_to,
            "points_per_height": {str(k): v for k, v
                                  in hres.points_per_height.items()},
            "window_violations": [list(map(int, v))
                                  for v in hres.window_violations],
        }

    def summarize(d):
        counts = {}
        for g in d["generators"]:
            counts[g["height"]] = counts.get(g["height"], 0) + 1
        return (f"  {len(d['generators'])} generators by height {counts}, "
                f"certified_up_to={d['certified_up_to']}")

    return _cached(job, "generators", compute, summarize)


def _polytope_artifact(job: Job):
    cone = _load_cone(job)

    def compute():
        poly = slice_polytope(cone, 1, standard_height(job.spec))
        return ser.polytope_to_json(poly)

    def summarize(d):
        return (f"  {len(d['vertices'])} vertices, intrinsic dim "
                f"{len(d['lattice_basis'])}")

    return _cached(job, "polytope", compute, summarize)


def _fan_artifact(job: Job):
    poly_data = _polytope_artifact(job)

    def compute():
        fan = normal_fan_rays(ser.polytope_from_json(poly_data))
        return ser.fan_to_json(fan)

    def summarize(d):
        return f"  {len(d['rays'])} rays, {len(d['maximal_cones'])} maximal cones"

    return _cached(job, "fan", compute, summarize)


def _classify_artifact(job: Job):
    fan_data = _fan_artifact(job)

    def compute():
        report = classify_toric(ser.fan_from_json(fan_data))
        return ser.toric_to_json(report)

    def summarize(d):
        flags = [k for k in ("complete", "fano", "gorenstein", "terminal",
                             "reflexive") if d.get(k)]
        idx = d.get("fano_index")
        return f"  {' '.join(flags) or 'incomplete'}" + \
            (f", fano index {idx}" if idx else "")

    return _cached(job, "classify", compute, summarize)


def _mirror_artifact(job: Job):
    fan_data = _fan_artifact(job)
    classify_data = _classify_artifact(job)

    def compute():
        if not classify_data.get("terminal"):
            return {"schema": f"laurent@{ser.SCHEMA_VERSION}",
                    "unsupported": "spanning polytope is not terminal; "
                                   "coefficient selection is out of scope",
                    "dim": None, "terms": []}
        fan = ser.fan_from_json(fan_data)
        f = laurent_from_rays(fan)
        data = ser.laurent_to_json(f)
        inv = newton_invariants(f, volume_max_dim=6)
        data["newton"] = {
            "vertex_count": inv.vertex_count,
            "lattice_point_count": inv.lattice_point_count,
            "reflexive": inv.reflexive,
            "terminal": inv.terminal,
            "normalized_volume": inv.normalized_volume,
        }
        return data

    def summarize(d):
        if d.get("unsupported"):
            return f"  unsupported: {d['unsupported']}"
        return f"  {len(d['terms'])} terms in {d['dim']} variables"

    return _cached(job, "mirror", compute, summarize)


def _period_artifact(job: Job, terms: int):
    mirror_data = _mirror_artifact(job)
    if mirror_data.get("unsupported"):
        raise KrontoricError("mirror artifact is an unsupported-report; "
                             "no period to compute")

    def compute():
        f = ser.laurent_from_json(mirror_data)
        per = classical_period(f, terms)
        return ser.period_to_json(per)

    def summarize(d):
        coeffs = d["coefficients"]
        shown = ", ".join(coeffs[:8]) + (", ..." if len(coeffs) > 8 else "")
        return f"  {len(coeffs)} terms: ({shown})"

    job_key = Job.__new__(Job)
    job_key.__dict__.update(job.__dict__)
    job_key.point_cap = terms  # fold the term count into the cache key
    return _cached(job_key, "period", compute, summarize)


def _verify_sagbi_artifact(job: Job):
    def compute():
        grading = job.grading()
        pipe = sagbi_pipeline(job.spec, grading,
                              max_degree=job.max_degree,
                              certify_window=job.certify_window,
                              orbit_cap=job.orbit_cap)
        out = {
            "schema": f"sagbi_report@{ser.SCHEMA_VERSION}",
            "coherent": pipe.coherent,
            "grassmannian_sagbi_assumed": pipe.grassmannian_sagbi_assumed,
            "degree2_closure_checked": pipe.degree2_closure_checked,
            "certified_up_to": pipe.certified_up_to,
            "points_per_height": {str(k): v for k, v
                                  in pipe.points_per_height.items()},
        }
        if not pipe.coherent:
            out["incoherent_subsets"] = [list(s) for s in
                                         pipe.incoherent_subsets[:20]]
            return out
        out["generators"] = [{
            "exponent": list(map(int, g.exponent)),
            "height": g.height,
            "pair": ser.pair_to_json(g.pair) if g.pair else None,
            "lm_verified": g.lm_verified,
            "fallback_used": g.fallback_used,
            "fallback_found": g.fallback_found,
        } for g in pipe.generators]
        out["all_verified"] = pipe.all_verified
        out["polytope"] = ser.polytope_to_json(pipe.polytope)
        out["fan"] = ser.fan_to_json(pipe.fan)
        out["toric"] = ser.toric_to_json(pipe.toric)
        return out

    def summarize(d):
        if not d["coherent"]:
            return "  grading incoherent; see incoherent_subsets"
        n = len(d["generators"])
        ok = sum(1 for g in d["generators"] if g["lm_verified"])
        return (f"  {ok}/{n} generators verified, "
                f"certified_up_to={d['certified_up_to']}, "
                f"fan rays {len(d['fan']['rays'])}")

    return _cached(job, "verify-sagbi", compute, summarize)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "reproduce":
            rep = run_example(args.example, slow=args.slow,
                              progress=lambda s: print(f"  ... {s}",
                                                       file=sys.stderr))
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            name = args.example + ("-slow" if args.slow else "")
            path = out / f"reproduce-{name}.json"
            path.write_bytes(_dump(rep.to_json()))
            print(format_report(rep))
            print(f"report: {path}")
            return 0 if rep.passed else 2
        job = Job(args)
        dispatch = {
            "cone": lambda: _cone_artifact(job),
            "generators": lambda: _generators_artifact(job),
            "polytope": lambda: _polytope_artifact(job),
            "fan": lambda: _fan_artifact(job),
            "classify": lambda: _classify_artifact(job),
            "mirror": lambda: _mirror_artifact(job),
            "verify-sagbi": lambda: _verify_sagbi_artifact(job),
        }
        if args.command == "period":
            _period_artifact(job, args.terms)
        else:
            dispatch[args.command]()
        return 0
    except UsageError as exc:
        print(json.dumps({"error": "usage", "message": str(exc)}))
        return 4
    except ResourceCapError as exc:
        print(json.dumps({"error": "resource_cap", "message": str(exc),
                          "cap": exc.cap}))
        return 3
    except IncoherentGradingError as exc:
        print(json.dumps({"error": "incoherent_grading", "message": str(exc)}))
        return 2
    except KrontoricError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
