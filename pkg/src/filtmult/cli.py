"""Batch front end: parse a problem file, dispatch to the engine, report.

Usage:
    filtmult <task> [--input spec.json] [--seed N] [--budget M]
             [--format json|text] [--output path] [--threshold X]

Exit codes: 0 success, 1 engine error, 2 validation error, 3 property-suite
failure.  With ``--format json`` the output is deterministic byte-for-byte
for a fixed input and seed.  The environment variable FILTMULT_THREADS caps
suite parallelism (0 or 1 = serial); instance order in reports is by index,
never by completion time.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .errors import FiltmultError, SpecValidationError
from .filtrations import Filtration, filtration_from_json
from .multiplicity import (
    ExactStrategy,
    NumericStrategy,
    Strategy,
    fit_quasi_polynomial,
    limit_normalized_colength,
    mixed_multiplicity_table,
    truncation_convergence,
)
from .okounkov import volume_limit_check
from .staircase import MonomialIdeal, colength
from .verifier import (
    STANDARD_WITNESS_POINTS,
    CeilingNormMultiFiltration,
    integrality_check,
    integrality_suite,
    minkowski_report,
    minkowski_suite,
    non_polynomial_witness,
    rees_identity_check,
)

TASKS = (
    "colength",
    "multiplicity",
    "mixed",
    "truncate-converge",
    "quasipoly",
    "okounkov",
    "minkowski",
    "rees",
    "integrality",
    "multigraded-demo",
)


def _strategy_from_json(data, budget: int | None) -> Strategy:
    if data is None:
        return ExactStrategy()
    kind = data.get("kind")
    if kind == "exact":
        return ExactStrategy(
            scale_bound=int(data.get("scale_bound", 24)),
            scale_depth=int(data.get("scale_depth", 4)),
            multiplicity_method=data.get("multiplicity_method", "auto"),
            hs_budget=int(data.get("hs_budget", 60)),
        )
    if kind == "numeric":
        m_max = int(data.get("m_max", 4096))
        if budget is not None:
            m_max = budget
        return NumericStrategy(m_max=m_max, m0=int(data.get("m0", 1)))
    raise SpecValidationError(f"unknown strategy kind {data.get('kind')!r}")


def _filtration_list(spec: dict) -> list[Filtration]:
    if "filtrations" not in spec:
        raise SpecValidationError("problem needs a 'filtrations' list")
    return [filtration_from_json(f) for f in spec["filtrations"]]


def _map_fn():
    threads = int(os.environ.get("FILTMULT_THREADS", "0") or "0")
    if threads > 1:
        pool = ThreadPoolExecutor(max_workers=threads)
        return lambda fn, items: list(pool.map(fn, items))
    return map


# ---------------------------------------------------------------------------
# Task handlers: each returns (report dict, passed flag or None)


def _task_colength(spec, args):
    ideal = MonomialIdeal.from_json(spec["ideal"])
    return {"ideal": ideal.to_json(), "colength": colength(ideal)}, None


def _task_multiplicity(spec, args):
    F = filtration_from_json(spec["filtration"])
    strategy = _strategy_from_json(spec.get("strategy"), args.budget)
    est = limit_normalized_colength([F], (1,), strategy)
    mult = math.factorial(F.dim) * est.value
    report = {
        "filtration": F.to_json(),
        "d": F.dim,
        "limit": est.to_json(),
        "multiplicity": str(mult) if est.exact else float(mult),
        "exact": est.exact,
    }
    return report, None


def _task_mixed(spec, args):
    Fs = _filtration_list(spec)
    strategy = _strategy_from_json(spec.get("strategy"), args.budget)
    table = mixed_multiplicity_table(Fs, strategy, seed=args.seed)
    return table.to_json(), None


def _task_truncate_converge(spec, args):
    Fs = _filtration_list(spec)
    report = truncation_convergence(
        Fs,
        spec["schedule"],
        targets=spec.get("targets"),
        seed=args.seed,
    )
    return report.to_json(), None


def _task_quasipoly(spec, args):
    Fs = _filtration_list(spec)
    qp = fit_quasi_polynomial(Fs, int(spec["period"]), window=int(spec.get("window", 2)))
    return qp.to_json(), None


def _task_okounkov(spec, args):
    F = filtration_from_json(spec["filtration"])
    m_max = int(spec.get("m_max", 64))
    if args.budget is not None:
        m_max = args.budget
    report = volume_limit_check(F, m_max)
    return report.to_json(), None


def _task_minkowski(spec, args):
    if "pair" in spec:
        F1 = filtration_from_json(spec["pair"][0])
        F2 = filtration_from_json(spec["pair"][1])
        strategy = _strategy_from_json(spec.get("strategy"), args.budget)
        report = minkowski_report(F1, F2, strategy, seed=args.seed)
        return report.to_json(), report.passed
    suite_spec = spec.get("suite", {})
    result = minkowski_suite(
        count_d2=int(suite_spec.get("count_d2", 100)),
        count_d3=int(suite_spec.get("count_d3", 25)),
        seed=args.seed,
        max_exp_d2=int(suite_spec.get("max_exp_d2", 5)),
        max_exp_d3=int(suite_spec.get("max_exp_d3", 4)),
        map_fn=_map_fn(),
    )
    return result.to_json(), result.passed


def _task_rees(spec, args):
    Fs = _filtration_list(spec)
    strategy = _strategy_from_json(spec.get("strategy"), args.budget)
    report = rees_identity_check(Fs, int(spec.get("slot", 1)), strategy, seed=args.seed)
    return report.to_json(), report.passed


def _task_integrality(spec, args):
    if "ideal" in spec:
        report = integrality_check(MonomialIdeal.from_json(spec["ideal"]))
        return report.to_json(), report.passed
    suite_spec = spec.get("suite", {})
    result = integrality_suite(
        count=int(suite_spec.get("count", 20)),
        seed=args.seed,
        max_exp=int(suite_spec.get("max_exp", 6)),
        map_fn=_map_fn(),
    )
    return result.to_json(), result.passed


def _task_multigraded_demo(spec, args):
    spec = spec or {}
    arity = int(spec.get("arity", 2))
    MF = CeilingNormMultiFiltration(arity, spec.get("weights"))
    points = [tuple(p) for p in spec.get("points", STANDARD_WITNESS_POINTS)]
    threshold = args.threshold if args.threshold is not None else float(spec.get("threshold", 0.05))
    m_max = args.budget if args.budget is not None else int(spec.get("m_max", 4096))
    report = non_polynomial_witness(MF, points, degree=MF.dim, threshold=threshold, m_max=m_max)
    return report.to_json(), report.witnessed


_HANDLERS = {
    "colength": _task_colength,
    "multiplicity": _task_multiplicity,
    "mixed": _task_mixed,
    "truncate-converge": _task_truncate_converge,
    "quasipoly": _task_quasipoly,
    "okounkov": _task_okounkov,
    "minkowski": _task_minkowski,
    "rees": _task_rees,
    "integrality": _task_integrality,
    "multigraded-demo": _task_multigraded_demo,
}


# ---------------------------------------------------------------------------
# Rendering


def _render_text(payload: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key, value in payload.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_render_text(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.append(_render_text(item, indent + 1))
                lines.append(f"{pad}  -")
            if lines[-1].endswith("-"):
                lines.pop()
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(lines)


def _emit(payload: dict, args) -> None:
    if args.format == "json":
        # suite reports stream as JSON lines, one record per instance,
        # followed by a summary record
        report = payload.get("report")
        if isinstance(report, dict) and "instances" in report:
            lines = [
                json.dumps(rec, sort_keys=True, separators=(",", ":"))
                for rec in report["instances"]
            ]
            summary = dict(payload)
            summary["report"] = {
                k: v for k, v in report.items() if k != "instances"
            } | {"count": len(report["instances"]), "summary": True}
            lines.append(json.dumps(summary, sort_keys=True, separators=(",", ":")))
            text = "\n".join(lines)
        else:
            text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    else:
        text = _render_text(payload)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="filtmult",
        description="Exact multiplicities and mixed multiplicities of filtrations "
        "of monomial ideals.",
    )
    parser.add_argument("task", choices=TASKS)
    parser.add_argument("--input", help="problem JSON file (defaults vary by task)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--budget", type=int, default=None, help="numeric index budget")
    parser.add_argument("--threshold", type=float, default=None, help="witness threshold")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--output", default=None, help="write the report to a file")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec: dict = {}
    if args.input:
        try:
            with open(args.input, encoding="utf-8") as fh:
                spec = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            _emit({"error": {"code": "SpecValidationError", "message": str(exc)}}, args)
            return 2
    elif args.task != "multigraded-demo":
        _emit(
            {"error": {"code": "SpecValidationError", "message": "--input is required"}},
            args,
        )
        return 2
    handler = _HANDLERS[args.task]
    try:
        report, passed = handler(spec, args)
    except SpecValidationError as exc:
        _emit({"error": {"code": exc.code, "message": str(exc)}}, args)
        return 2
    except (KeyError, TypeError, ValueError) as exc:
        _emit({"error": {"code": "SpecValidationError", "message": repr(exc)}}, args)
        return 2
    except FiltmultError as exc:
        _emit({"error": {"code": exc.code, "message": str(exc)}}, args)
        return 1
    payload = {"task": args.task, "seed": args.seed, "report": report}
    if passed is not None:
        payload["pass"] = bool(passed)
    _emit(payload, args)
    return 0 if passed in (None, True) else 3


if __name__ == "__main__":
    sys.exit(main())
