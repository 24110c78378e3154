"""Command-line driver: ``gkz triangulate|analyze|verify|oracle``.

Every job reads one JSON document (validated against ``schema/v1``) and
writes one JSON report::

    {"schema": "gkz/report/v1", "job": {...}, "results": ...,
     "checks": [{"name", "status", "measured", "threshold", "anchor"}, ...],
     "status": "Pass" | "Fail" | "Error", "timing": {"seconds": ...}}

Complex numbers are written as ``[re, im]``, exact rationals as ``"p/q"``
strings and matrices row-major.  Exit codes: 0 success, 1 input error,
2 mathematical precondition failure, 3 verification failure.

``--jobs`` caps the number of worker processes used by ``verify`` (one
criterion per worker) and by ``analyze`` (one simplex per worker);
``triangulate`` and ``oracle`` run in a single process.  Results do not
depend on the worker count.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from . import acceptance
from .errors import GKZError, HypothesisViolated, InputError
from .gkzsys import build_system, cayley_matrix

__all__ = ["JobConfig", "main", "encode", "load_schema", "validate", "run_job"]

log = logging.getLogger("gkz")

COMMANDS = ("triangulate", "analyze", "verify", "oracle")
EXIT_OK, EXIT_INPUT, EXIT_MATH, EXIT_VERIFY = 0, 1, 2, 3
REPORT_SCHEMA = "gkz/report/v1"


# ---------------------------------------------------------------------------
# JSON encoding and schemas


def encode(obj: Any) -> Any:
    """Convert results to plain JSON values.

    Fractions become ``"p/q"`` strings, complex numbers ``[re, im]`` pairs,
    arrays nested lists; non-finite floats become the strings ``"inf"``,
    ``"-inf"`` or ``"nan"``.
    """
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else ("nan" if math.isnan(x) else ("inf" if x > 0 else "-inf"))
    if isinstance(obj, (complex, np.complexfloating)):
        return [encode(float(obj.real)), encode(float(obj.imag))]
    if isinstance(obj, np.ndarray):
        return [encode(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    if hasattr(obj, "value") and hasattr(obj, "name"):  # enums
        return obj.value
    raise TypeError(f"cannot encode {type(obj).__name__}")


def load_schema(name: str) -> Dict:
    """Load ``schema/v1/<name>.json`` from the package data."""
    text = resources.files("gkz").joinpath("schema", "v1", f"{name}.json").read_text()
    return json.loads(text)


def _registry():
    from referencing import Registry, Resource

    common = load_schema("common")
    return Registry().with_resource(common["$id"], Resource.from_contents(common))


def validate(document: Dict, name: str) -> None:
    """Validate ``document`` against a versioned schema.

    Raises
    ------
    InputError
        Listing the first violation and where it occurs.
    """
    import jsonschema

    validator = jsonschema.Draft202012Validator(load_schema(name), registry=_registry())
    errors = sorted(validator.iter_errors(document), key=lambda e: list(e.path))
    if errors:
        e = errors[0]
        where = "/".join(str(p) for p in e.path) or "<root>"
        raise InputError(f"input violates schema {name!r} at {where}: {e.message}")


# ---------------------------------------------------------------------------
# configuration


@dataclass
class JobConfig:
    """Everything a job needs besides its input document.

    ``tolerances`` holds ``series_tol`` (numerical rank threshold in
    ``analyze``) and ``quad_tol`` (quadrature tolerance in ``oracle``, or
    threshold override in ``verify`` when given explicitly).
    """

    command: str
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    kind: Optional[str] = None
    truncation_order: int = 24
    tolerances: Dict[str, Optional[float]] = field(default_factory=lambda: {"series_tol": 1e-10, "quad_tol": None})
    jobs: int = 1
    seed: int = acceptance.DEFAULT_SEED
    only: Optional[List[str]] = None
    omega: Optional[list] = None
    parameter: Optional[list] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.truncation_order < 1:
            raise InputError("truncation order must be at least 1")
        for k, v in self.tolerances.items():
            if v is not None and not v > 0:
                raise InputError(f"tolerance {k} must be positive")
        if self.jobs < 1:
            raise InputError("--jobs must be at least 1")

    def echo(self) -> Dict:
        return {
            "command": self.command,
            "input_path": self.input_path,
            "output_path": self.output_path,
            "kind": self.kind,
            "truncation_order": self.truncation_order,
            "tolerances": self.tolerances,
            "jobs": self.jobs,
            "seed": self.seed,
        }


def _check(name, ok, measured, threshold, anchor, status=None) -> Dict:
    return {
        "name": name,
        "status": status or ("Pass" if ok else "Fail"),
        "measured": measured,
        "threshold": threshold,
        "anchor": anchor,
    }


def _system_and_cayley(doc: Dict, parameter=None):
    labels = doc.get("labels")
    if "cayley" in doc:
        cay = doc["cayley"]
        cs = cayley_matrix(cay["blocks"], cay.get("A0"))
        return cs.system(parameter, labels=labels), cs
    return build_system(doc["A"], parameter, labels=labels), None


def _complex_vector(values) -> np.ndarray:
    return np.array([complex(v[0], v[1]) if isinstance(v, list) else complex(v) for v in values], dtype=complex)


def _as_complex(v) -> complex:
    return complex(v[0], v[1]) if isinstance(v, list) else complex(v)


# ---------------------------------------------------------------------------
# commands


def run_triangulate(config: JobConfig, doc: Dict) -> Dict:
    """Regular triangulation with determinants, Gevrey exponents and cone rows."""
    from .fan import regular_triangulation, sample_point

    validate(doc, "triangulate")
    spec, _ = _system_and_cayley(doc)
    tri = regular_triangulation(spec, doc["omega"])
    simplices = []
    for sd in tri.simplices:
        simplices.append(
            {
                "sigma": list(sd.labels),
                "det": sd.det,
                "volume": sd.volume,
                "gevrey": {str(spec.labels[j]): s for j, s in sd.gevrey.items()},
                "invariant_factors": sd.group.invariants,
            }
        )
    rows = [{"sigma": list(spec.label_of(s)), "column": spec.labels[j], "row": list(r)} for s, j, r in tri.cone_rows()]
    results = {
        "labels": list(spec.labels),
        "omega": list(tri.omega),
        "simplices": simplices,
        "volume": tri.volume,
        "cone_rows": rows,
        "sample_point": sample_point(tri, R=doc.get("R", 0.1)),
    }
    covered = sorted({i for sd in tri.simplices for i in sd.sigma})
    checks = [_check("simplices-cover-columns", len(covered) >= spec.n, len(covered), spec.n, "every simplex spans R^n and the union uses at least n columns")]
    return {"results": results, "checks": checks}


def _analyze_simplex(args):
    """Everything ``analyze`` reports about one simplex (runs in a worker)."""
    from .basis import transform_matrix
    from .series import Genericity, evaluate, gamma_series, representatives, very_generic

    sd, cs, kind, z, order, rank_tol, seed = args
    spec = sd.spec
    checks = []
    out: Dict[str, Any] = {"sigma": list(sd.labels), "det": sd.det, "volume": sd.volume}
    reps = representatives(sd)
    out["representatives"] = [list(k) for k in reps]
    verdict = very_generic(sd, spec.parameter)
    out["very_generic"] = {"status": verdict.status.value, "witness": verdict.witness}
    checks.append(
        _check(
            f"very-generic {sd.labels}",
            verdict.status is not Genericity.NO,
            verdict.status.value,
            "yes",
            "no entry of A_sigma^-1 (c + A_sigma_bar m) is an integer",
        )
    )
    values = []
    for k in reps:
        v = evaluate(gamma_series(sd, k, spec.parameter), z, order)
        values.append({"k": list(k), "value": v.value, "tail_bound": v.tail_bound, "terms": v.terms})
    out["series"] = values
    # independence: the series evaluated at r nearby points form a nonsingular matrix
    rng = np.random.default_rng([seed, *sd.sigma])
    pts = [z * np.exp(0.05 * (rng.standard_normal(z.shape) + 1j * rng.standard_normal(z.shape))) if p else z for p in range(len(reps))]
    Phi = np.array([[evaluate(gamma_series(sd, k, spec.parameter), p, order).value for k in reps] for p in pts])
    sv = np.linalg.svd(Phi, compute_uv=False)
    ratio = float(sv[-1] / sv[0]) if sv[0] > 0 else 0.0
    checks.append(_check(f"series-independence {sd.labels}", ratio > rank_tol, ratio, rank_tol, "Gamma series of distinct classes are linearly independent"))
    try:
        tm = transform_matrix(kind, sd, cayley=cs)
    except HypothesisViolated as exc:
        checks.append(_check(f"hypotheses {sd.labels}", False, exc.hypothesis, "satisfied", f"transformation matrix hypothesis: {exc}"))
        out["transform"] = None
        return out, checks
    M = tm.matrix
    det = abs(np.linalg.det(M))
    invertible = tm.invertible(rank_tol)
    out["transform"] = {
        "kind": tm.kind,
        "dual_representatives": [list(k) for k in tm.dual_reps],
        "factors": {"prefactor": tm.prefactor, "left": tm.left, "character": tm.character, "right": tm.right},
        "matrix": M,
        "abs_det": det,
        "integral_values": M @ np.array([v["value"] for v in values]),
    }
    checks.append(_check(f"hypotheses {sd.labels}", True, "satisfied", "satisfied", f"{tm.kind} transformation matrix hypotheses"))
    checks.append(_check(f"invertible {sd.labels}", invertible, det, 0.0, "|det T_sigma| != 0 (integral solutions form a basis)"))
    return out, checks


def run_analyze(config: JobConfig, doc: Dict) -> Dict:
    """Series, very-generic verdicts and transformation matrices per simplex."""
    from .fan import regular_triangulation, sample_point

    validate(doc, "analyze")
    kind = (config.kind or doc.get("kind") or "laplace").lower()
    order = doc.get("order", config.truncation_order) if config.truncation_order == 24 else config.truncation_order
    spec, cs = _system_and_cayley(doc, doc["parameter"])
    if kind != "laplace" and cs is None:
        raise InputError(f"kind {kind!r} needs a 'cayley' description of the system")
    tri = regular_triangulation(spec, doc["omega"])
    z = _complex_vector(doc["point"]) if "point" in doc else sample_point(tri, R=doc.get("R", 0.1))
    if z.shape[0] != spec.N:
        raise InputError(f"point has {z.shape[0]} coordinates, expected {spec.N}")
    work = [(sd, cs, kind, z, order, config.tolerances.get("series_tol") or 1e-10, config.seed) for sd in tri.simplices]
    if config.jobs > 1 and len(work) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            parts = list(pool.map(_analyze_simplex, work))
    else:
        parts = [_analyze_simplex(w) for w in work]
    checks = [c for _, cl in parts for c in cl]
    results = {"kind": kind, "volume": tri.volume, "point": z, "order": order, "simplices": [p for p, _ in parts]}
    return {"results": results, "checks": checks}


def run_verify(config: JobConfig, doc: Optional[Dict]) -> Dict:
    """The acceptance suite (or the selected criteria)."""
    doc = doc or {}
    validate(doc, "verify")
    only = config.only or doc.get("only")
    tol = config.tolerances.get("quad_tol") if config.tolerances.get("quad_tol") is not None else doc.get("tol")
    try:
        checks = acceptance.run_suite(only=only, tol=tol, seed=config.seed, jobs=config.jobs)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from exc
    for c in checks:
        log.info(c.line())
    return {
        "results": {"criteria": [c.to_dict() for c in checks]},
        "checks": [_check(c.name, c.passed, c.measured, c.threshold, c.anchor, c.status) for c in checks],
    }


def run_oracle(config: JobConfig, doc: Dict) -> Dict:
    """One reference integral, compared with its closed form where one exists."""
    from . import contour
    from .special import rgamma

    validate(doc, "oracle")
    kind = doc["integral"]
    tol = config.tolerances.get("quad_tol") or 1e-12
    checks = []
    if kind == "hankel":
        a = _as_complex(doc["alpha"])
        r = contour.hankel_integral(a, delta=doc.get("delta", 0.5), tol=tol)
        exact = 2j * math.pi * rgamma(1 - a)
        err = abs(r.value - exact) / max(abs(exact), 1e-300)
        results = {"value": r.value, "error_estimate": r.error, "evaluations": r.evaluations, "closed_form": exact}
        checks.append(_check("hankel-closed-form", err <= max(1e-8, 10 * tol), err, max(1e-8, 10 * tol), "Hankel loop integral 2 pi i / Gamma(1 - alpha)"))
    elif kind == "pochhammer":
        al = [_as_complex(x) if isinstance(x, (list, float)) else complex(Fraction(x)) for x in doc["alphas"]]
        r = contour.pochhammer_integral(al, tol=tol, radius=doc.get("radius", 0.25))
        exact = contour.pochhammer_closed_form(al)
        err = abs(r.value - exact) / max(abs(exact), 1e-300)
        thr = max(1e-8 if len(al) == 2 else 1e-5, 10 * tol)
        results = {"value": r.value, "error_estimate": r.error, "evaluations": r.evaluations, "closed_form": exact}
        checks.append(_check("pochhammer-closed-form", err <= thr, err, thr, "Pochhammer cycle over the simplex, product of Gamma factors"))
    elif kind == "gauss":
        a, b, c, z = (_as_complex(doc[x]) for x in "abcz")
        reps = ["series", "euler", "laplace", "residue"] if doc.get("representation", "all") == "all" else [doc["representation"]]
        vals = {}
        for rep in reps:
            q = contour.gauss_oracle(a, b, c, z, representation=rep, tol=min(tol, 1e-12))
            vals[rep] = {"value": q.value, "error_estimate": q.error, "evaluations": q.evaluations}
        results = {"values": vals}
        if len(reps) > 1:
            ref = vals["series"]["value"]
            worst = max(abs(v["value"] - ref) / abs(ref) for v in vals.values())
            checks.append(_check("gauss-agreement", worst <= 1e-6, worst, 1e-6, "four representations of the Gauss function agree"))
    else:  # laplace-cycle
        from .basis import transform_matrix
        from .exactlat import QuotientGroup, transpose
        from .fan import regular_triangulation, sample_point, simplex_data

        spec = build_system(doc["A"], doc["parameter"], labels=doc.get("labels"))
        sigma = tuple(sorted(spec.position(x) for x in doc["sigma"]))
        sd = simplex_data(spec, sigma)
        if "point" in doc:
            z = _complex_vector(doc["point"])
        elif "omega" in doc:
            z = sample_point(regular_triangulation(spec, doc["omega"]), R=doc.get("R", 0.1))
        else:
            raise InputError("laplace-cycle needs either 'point' or 'omega'")
        deck = tuple(doc.get("deck", [0] * spec.n))
        q = contour.laplace_cycle_oracle(spec, sigma, z, deck=deck, tol=max(tol, 1e-12))
        # series side: the row of T_sigma belonging to the dual representative deck
        base = transform_matrix("laplace", sd)
        H = QuotientGroup(transpose(sd.A_sigma))
        dreps = [deck if H.same_class(d, deck) else d for d in base.dual_reps]
        tm = transform_matrix("laplace", sd, reps=base.reps, dual_reps=dreps)
        from .basis import basis_eval

        row = [i for i, d in enumerate(dreps) if d == deck][0]
        series_side = basis_eval(tm, z, config.truncation_order)[row] / (2j * math.pi)
        err = abs(q.value - series_side) / abs(series_side)
        results = {"value": q.value, "error_estimate": q.error, "evaluations": q.evaluations, "point": z, "deck": list(deck), "series_side": series_side}
        checks.append(_check("laplace-cycle-vs-series", err <= 1e-4, err, 1e-4, "exponential cycle integral = (1/(2 pi i)) (T_sigma phi) for the matching dual representative"))
    return {"results": results, "checks": checks}


RUNNERS = {"triangulate": run_triangulate, "analyze": run_analyze, "verify": run_verify, "oracle": run_oracle}


def run_job(config: JobConfig, doc: Optional[Dict]) -> (Dict, int):
    """Run one job and return ``(report, exit_code)``; never raises GKZError."""
    t0 = time.perf_counter()
    report: Dict[str, Any] = {"schema": REPORT_SCHEMA, "job": config.echo(), "results": None, "checks": []}
    try:
        if doc is None and config.command != "verify":
            raise InputError(f"{config.command} needs --input")
        part = RUNNERS[config.command](config, doc)
        report.update(part)
        failed = any(c["status"] == "Fail" for c in report["checks"])
        report["status"] = "Fail" if failed else "Pass"
        if not failed:
            code = EXIT_OK
        elif config.command == "analyze":
            code = EXIT_MATH
        else:
            code = EXIT_VERIFY
    except GKZError as exc:
        report["status"] = "Error"
        code = exc.exit_code
        report["error"] = {"type": type(exc).__name__, "message": str(exc), "exit_code": code}
        for attr in ("simplex", "column", "hypothesis"):
            if getattr(exc, attr, None) is not None:
                report["error"][attr] = getattr(exc, attr)
    report["timing"] = {"seconds": time.perf_counter() - t0}
    return encode(report), code


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gkz", description="GKZ hypergeometric systems: triangulations, Gamma series, transformation matrices, integral oracles.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", help="input JSON document (optional for verify)")
    p.add_argument("--output", help="report path (default: standard output)")
    p.add_argument("--kind", choices=["laplace", "residue", "euler", "mixed", "mixed-residue", "mixed-euler"])
    p.add_argument("--order", type=int, default=24, help="series truncation order")
    p.add_argument("--tol", type=float, help="quadrature tolerance (oracle) or threshold override (verify)")
    p.add_argument("--jobs", type=int, default=1, help="maximum worker processes")
    p.add_argument("--only", nargs="+", help="verify: run only these criteria", metavar="NAME")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    import os

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse errors are input errors
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    doc = None
    try:
        if args.input:
            with open(args.input) as fh:
                doc = json.load(fh)
        seed = doc.get("seed") if isinstance(doc, dict) and "seed" in doc else None
        if os.environ.get("GKZ_SEED") not in (None, ""):
            seed = int(os.environ["GKZ_SEED"])
        config = JobConfig(
            command=args.command,
            input_path=args.input,
            output_path=args.output,
            kind=args.kind,
            truncation_order=args.order,
            tolerances={"series_tol": 1e-10, "quad_tol": args.tol},
            jobs=args.jobs,
            seed=acceptance.DEFAULT_SEED if seed is None else int(seed),
            only=args.only,
        )
        if doc is not None and not isinstance(doc, dict):
            raise InputError("input must be a JSON object")
    except (OSError, json.JSONDecodeError, ValueError, InputError) as exc:
        print(f"gkz: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report, code = run_job(config, doc)
    text = json.dumps(report, indent=2)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if code != EXIT_OK:
        msg = report.get("error", {}).get("message") or "; ".join(c["name"] for c in report["checks"] if c["status"] == "Fail")
        print(f"gkz: {report['status']}: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
