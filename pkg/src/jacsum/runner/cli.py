"""
命令行入口
每个子命令对应一个内核操作或验证套件，输出 json / csv / text 报告
"""

import argparse
import json
import logging
import math
import sys
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

from jacsum.kernels.config import DEFAULT_SETTINGS, Settings
from jacsum.kernels.errors import JacsumError
from jacsum.kernels.exports import rows_to_csv_text
from jacsum.kernels.hsums import (
    HSumRequest,
    IndexData,
    h_brute,
    h_closed_coprime,
    h_fast,
    h_fft,
    parse_sign,
    weil_bound,
)
from jacsum.kernels.iwaniec import (
    DECAY_COLUMNS,
    after_p_exponents,
    as_rational,
    before_p_exponents,
    decay_report,
    endgame_exponent,
    proof_params,
    theorem_exponent,
    theorem_exponent_check,
    write_decay_report,
)
from jacsum.kernels.jacobiforms import phi_cusp, phi_weak, write_table
from jacsum.kernels.modarith import gauss_closed_form, gauss_sum, salie_closed_form, salie_sum
from jacsum.kernels.petersson import (
    RATIO_PAIRS,
    ZERO_DIM_SAMPLES,
    PeterssonJob,
    geometric_side,
    lambda_km,
    ratio_check,
    zero_dim_check,
)
from jacsum.runner.verifier import SuiteRunner, setup_logger
from jacsum.suites import SUITES

logger = logging.getLogger("jacsum.cli")

# h_brute is O(c^2); hsum compares against it only up to this modulus
BRUTE_COMPARE_LIMIT = 3_000
OUTPUTS = ("json", "csv", "text")
REQUIRED = object()


class UsageError(Exception):
    """Invalid command or parameter; exit status 2"""


@dataclass(frozen=True)
class JobSpec:
    command: str
    parameters: Dict[str, str] = field(default_factory=dict)
    output: str = "json"
    threads: Optional[int] = None
    timing: bool = False


# ---------------------------------------------------------------------------
# parameter converters; each raises ValueError with a short reason


def _int(text: str) -> int:
    return int(text)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise ValueError("must be a positive integer")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise ValueError("must be a nonnegative integer")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0 or math.isinf(value):
        raise ValueError("must be a positive number")
    return value


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except JacsumError:
        raise ValueError("must be an exact rational such as 21/155")


def _sign(text: str) -> int:
    try:
        return parse_sign(text)
    except JacsumError:
        raise ValueError("must be + or -")


def _int_list(text: str) -> List[int]:
    return [int(item) for item in text.split(",") if item.strip()]


def _point(text: str) -> Tuple[int, int]:
    n, r = text.split(":")
    return int(n), int(r)


def _points(text: str) -> List[Tuple[int, int]]:
    return [_point(item) for item in text.split(",") if item.strip()]


def _pairs(text: str) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
    pairs = []
    for item in text.split(","):
        first, second = item.split("/")
        pairs.append((_point(first), _point(second)))
    return pairs


def _choice(*choices: str) -> Callable[[str], str]:
    def convert(text: str) -> str:
        if text not in choices:
            raise ValueError(f"must be one of {', '.join(choices)}")
        return text

    return convert


def _suite_names(text: str) -> List[str]:
    if text == "all":
        return list(SUITES)
    return [name.strip() for name in text.split(",") if name.strip()]


def _text(text: str) -> str:
    return text


def _format_points(points) -> str:
    return ",".join(f"{n}:{r}" for n, r in points)


PARAMETERS: Dict[str, Dict[str, Tuple[Callable[[str], Any], Any]]] = {
    "hsum": {
        "m": (_positive_int, REQUIRED),
        "n": (_positive_int, REQUIRED),
        "r": (_int, REQUIRED),
        "c": (_positive_int, REQUIRED),
        "sign": (_sign, "+"),
        "method": (_choice("fast", "brute", "closed", "fft"), "fast"),
    },
    "gauss": {"a": (_int, REQUIRED), "c": (_positive_int, REQUIRED)},
    "salie": {"a": (_int, REQUIRED), "b": (_int, REQUIRED), "c": (_positive_int, REQUIRED)},
    "petersson": {
        "k": (_positive_int, REQUIRED),
        "m": (_positive_int, REQUIRED),
        "n": (_positive_int, REQUIRED),
        "r": (_int, REQUIRED),
        "level": (_positive_int, "1"),
        "c_max": (_nonnegative_int, "10000"),
    },
    "zero-dim": {
        "k": (_int_list, "4,6,8"),
        "m": (_positive_int, "1"),
        "samples": (_points, _format_points(ZERO_DIM_SAMPLES)),
        "c_max": (_nonnegative_int, str(DEFAULT_SETTINGS.zero_dim_cutoff)),
        "tolerance": (_positive_float, str(DEFAULT_SETTINGS.zero_dim_tolerance)),
    },
    "ratio": {
        "k": (_positive_int, REQUIRED),
        "pairs": (_pairs, ",".join(f"{a}:{b}/{c}:{d}" for (a, b), (c, d) in RATIO_PAIRS)),
        "c_max": (_nonnegative_int, str(DEFAULT_SETTINGS.ratio_cutoff)),
        "tolerance": (_positive_float, str(DEFAULT_SETTINGS.ratio_tolerance)),
    },
    "exponents": {"sigma": (_rational, REQUIRED)},
    "decay": {
        "m": (_positive_int, REQUIRED),
        "n": (_positive_int, REQUIRED),
        "r": (_int, REQUIRED),
        "P": (_positive_int, "7"),
        "a": (_int_list, "1,3,5,7,9,11,13"),
        "t": (_int_list, "1,2"),
        "B": (_int_list, "100,200,400"),
        "C": (_positive_int, "1"),
        "out": (_text, ""),
    },
    "verify": {"suite": (_suite_names, "all"), "suite_dir": (_text, "")},
    "table": {
        "kind": (_choice("-2", "0", "10", "12"), REQUIRED),
        "cutoff": (_positive_int, str(DEFAULT_SETTINGS.series_cutoff)),
        "out": (_text, ""),
    },
}
COMMANDS = tuple(PARAMETERS)


def _flag(name: str) -> str:
    return "--" + name.replace("_", "-")


def validate(spec: JobSpec) -> Dict[str, Any]:
    """Converted parameters for spec.command; UsageError names the offending parameter"""
    if spec.command not in PARAMETERS:
        raise UsageError(f"Unknown command: {spec.command}")
    if spec.output not in OUTPUTS:
        raise UsageError(f"Unknown output format: {spec.output}")
    table = PARAMETERS[spec.command]
    unknown = sorted(set(spec.parameters) - set(table))
    if unknown:
        raise UsageError(f"Unknown parameter for {spec.command}: {', '.join(unknown)}")
    params = {}
    for name, (convert, default) in table.items():
        raw = spec.parameters.get(name)
        if raw is None:
            if default is REQUIRED:
                raise UsageError(f"Missing parameter {_flag(name)} for {spec.command}")
            raw = default
        try:
            params[name] = convert(raw)
        except (ValueError, TypeError) as e:
            raise UsageError(f"Invalid value for {_flag(name)}: {raw!r} ({e})")
    return params


# ---------------------------------------------------------------------------
# handlers return a payload: result plus optional pass / tail / err_bound / rows


def _hsum(params: Dict[str, Any], settings: Settings) -> Dict[str, Any]:
    req = HSumRequest(IndexData(params["m"], params["n"], params["r"]), params["c"], params["sign"])
    method = params["method"]
    if method == "brute":
        value = h_brute(req)
    elif method == "closed":
        value = h_closed_coprime(req)
    elif method == "fft":
        value = h_fft(req)
    else:
        value = h_fast(req, settings)
    result: Dict[str, Any] = {"value": value.value, "err": value.err, "D": req.index.D, "weil_bound": weil_bound(req)}
    ok = abs(value.value) <= weil_bound(req) + value.err
    if method != "brute" and req.c <= BRUTE_COMPARE_LIMIT:
        agrees = value.agrees_with(h_brute(req), slack=1e-9)
        result["brute_agrees"] = agrees
        ok = ok and agrees
    return {"result": result, "err_bound": value.err, "pass": ok}


def _gauss(params: Dict[str, Any], settings: Settings) -> Dict[str, Any]:
    direct = gauss_sum(params["a"], params["c"])
    closed = gauss_closed_form(params["a"], params["c"])
    agrees = abs(direct.value - closed.value) <= 1e-9
    return {
        "result": {"value": direct.value, "closed_form": closed.value, "agrees": agrees},
        "err_bound": direct.err,
        "pass": agrees,
    }


def _salie(params: Dict[str, Any], settings: Settings) -> Dict[str, Any]:
    direct = salie_sum(params["a"], params["b"], params["c"])
    closed = salie_closed_form(params["a"], params["b"], params["c"])
    agrees = direct.agrees_with(closed, slack=1e-9)
    return {
        "result": {"value": direct.value, "closed_form": closed.value, "agrees": agrees},
        "err_bound": direct.err + closed.err,
        "pass": agrees,
    }


def _petersson(params: Dict[str, Any], settings: Settings) -> Dict[str, Any]:
    index = IndexData(params["m"], params["n"], params["r"])
    job = PeterssonJob(params["k"], index, params["level"], params["c_max"])
    side = geometric_side(job, settings, settings.workers)
    result = {
        "value": side.value,
        "err": side.err,
        "tail": side.tail,
        "terms": side.terms,
        "D": index.D,
        "lambda": lambda_km(job.k, index.m, index.D),
    }
    return {"result": result, "err_bound": side.err, "tail": side.tail}


def _zero_dim(params: Dict[str, Any], settings: Settings) -> Dict[str, Any]:
    report = zero_dim_check(
        params["k"],
        params["m"],
        params["samples"],
        c_max=params["c_max"],
        tolerance=params["tolerance"],
        settings=settings,
        workers=settings.workers,
    )
    return {"result": report, "pass": report["pass"], "rows": report["records"]}


def _ratio(params: Dict[str, Any], settings: Settings) -> Dict[str, Any]:
    report = ratio_check(
        params["k"],
        pairs=params["pairs"],
        c_max=params["c_max"],
        tolerance=params["tolerance"],
        settings=settings,
        workers=settings.workers,
    )
    return {"result": report, "pass": report["pass"]}


def _exponents(params: Dict[str, Any], settings: Settings) -> Dict[str, Any]:
    sigma = params["sigma"]
    result = endgame_exponent(sigma).as_dict()
    proof = proof_params(sigma)
    result.update(
        {
            "c_exp": proof.c_exp,
            "k_exp": proof.k_exp,
            "t_exp": proof.t_exp,
            "before_p": list(before_p_exponents(proof)),
            "after_p": list(after_p_exponents(proof)),
            "theorem_exponent": theorem_exponent(sigma),
        }
    )
    return {"result": result, "pass": theorem_exponent_check(sigma)}


def _decay(params: Dict[str, Any], settings: Settings) -> Dict[str, Any]:
    index = IndexData(params["m"], params["n"], params["r"])
    rows = decay_report(index, params["P"], params["a"], params["t"], params["B"], params["C"])
    if params["out"]:
        write_decay_report(rows, params["out"])
    return {"result": {"D": index.D, "rows": rows}, "rows": rows, "columns": DECAY_COLUMNS}


def _verify(params: Dict[str, Any], settings: Settings, timing: bool = False) -> Dict[str, Any]:
    runner = SuiteRunner(
        params["suite"],
        num_workers=settings.workers,
        suite_dir=params["suite_dir"] or None,
        settings=settings,
        timing=timing,
    )
    summary = runner.run()
    rows = [
        {"suite": rep["suite"], "cases": rep["cases"], "failed": rep["failed"], "pass": rep["pass"]}
        for rep in summary["suites"]
    ]
    return {"result": summary, "pass": summary["pass"], "rows": rows}


def _table(params: Dict[str, Any], settings: Settings) -> Dict[str, Any]:
    kind = int(params["kind"])
    table = phi_weak(kind, params["cutoff"]) if kind <= 0 else phi_cusp(kind, params["cutoff"])
    if params["out"]:
        write_table(table, params["out"])
    rows = list(table.rows())
    return {"result": {"name": table.name, "max_n": table.max_n, "rows": rows}, "rows": rows, "columns": ("n", "r", "c")}


HANDLERS = {
    "hsum": _hsum,
    "gauss": _gauss,
    "salie": _salie,
    "petersson": _petersson,
    "zero-dim": _zero_dim,
    "ratio": _ratio,
    "exponents": _exponents,
    "decay": _decay,
    "verify": _verify,
    "table": _table,
}


# ---------------------------------------------------------------------------
# rendering


def _encode(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, Enum):
        return value.value
    if hasattr(value, "item"):
        return value.item()
    raise TypeError(f"Cannot serialize {type(value).__name__}")


def _plain(value):
    """Round-trip through the JSON encoder so csv/text see the same values"""
    return json.loads(json.dumps(value, default=_encode, sort_keys=True))


def _flatten(value, prefix: str = "") -> List[Tuple[str, str]]:
    if isinstance(value, dict):
        items = []
        for key in sorted(value):
            items.extend(_flatten(value[key], f"{prefix}.{key}" if prefix else str(key)))
        return items
    if isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value):
        return [(prefix, ",".join(json.dumps(v) for v in value))]
    if isinstance(value, list):
        items = []
        for i, item in enumerate(value):
            items.extend(_flatten(item, f"{prefix}[{i}]"))
        return items
    return [(prefix, json.dumps(value))]


def render(report: Dict[str, Any], output: str, rows=None, columns=None) -> str:
    if output == "json":
        return json.dumps(report, default=_encode, sort_keys=True, ensure_ascii=False)
    if output == "csv":
        if rows is not None:
            rows = _plain(rows)
            if columns is None:
                columns = list(rows[0]) if rows else []
                rows = [{key: json.dumps(val) if isinstance(val, (dict, list)) else val for key, val in row.items()} for row in rows]
            return rows_to_csv_text(rows, columns)
        flat = [{"key": key, "value": val} for key, val in _flatten(_plain(report))]
        return rows_to_csv_text(flat, ("key", "value"))
    return "\n".join(f"{key}: {val}" for key, val in _flatten(_plain(report)))


def run(spec: JobSpec, settings: Optional[Settings] = None) -> Tuple[int, str]:
    """Exit status (0 pass, 1 failure, 2 usage) and the serialized report"""
    try:
        params = validate(spec)
    except UsageError as e:
        logger.error(str(e))
        return 2, str(e)

    settings = settings or DEFAULT_SETTINGS
    if spec.threads is not None:
        settings = settings.replace(workers=max(1, spec.threads))

    start_time = time.time()
    try:
        if spec.command == "verify":
            payload = _verify(params, settings, spec.timing)
        else:
            payload = HANDLERS[spec.command](params, settings)
    except (JacsumError, ArithmeticError) as e:
        logger.error(f"{spec.command} failed: {e}")
        payload = {"error": f"{type(e).__name__}: {e}", "pass": False}
    elapsed = time.time() - start_time

    rows = payload.pop("rows", None)
    columns = payload.pop("columns", None)
    report = {"command": spec.command, "params": dict(sorted(spec.parameters.items())), **payload}
    if spec.timing:
        report["elapsed_ms"] = int(elapsed * 1000)
    logger.info(f"{spec.command} finished in {elapsed:.2f}s")
    code = 0 if report.get("pass", True) else 1
    return code, render(report, spec.output, rows, columns)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jacsum", description="Kloosterman-type sums for Jacobi forms and their verification"
    )
    parser.add_argument("--output", choices=OUTPUTS, default="json", help="Report format")
    parser.add_argument("--threads", type=int, default=None, help="Number of worker processes")
    parser.add_argument("--log-dir", default="log", help="Log directory (empty to disable the log file)")
    parser.add_argument("--timing", action="store_true", help="Add elapsed_ms to the report")
    sub = parser.add_subparsers(dest="command", required=True)
    for command, table in PARAMETERS.items():
        cmd = sub.add_parser(command)
        for name, (_, default) in table.items():
            cmd.add_argument(
                _flag(name),
                dest=name,
                default=None,
                required=default is REQUIRED,
                help=None if default is REQUIRED else f"default: {default}",
            )
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logger(args.command, args.log_dir or None)
    names = PARAMETERS[args.command]
    parameters = {name: getattr(args, name) for name in names if getattr(args, name) is not None}
    spec = JobSpec(args.command, parameters, args.output, args.threads, args.timing)

    try:
        code, text = run(spec)
    except Exception as e:
        logging.getLogger("jacsum").error(f"Processing failed: {e}")
        import traceback

        traceback.print_exc()
        return 1
    if code == 2:
        parser.error(text)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
