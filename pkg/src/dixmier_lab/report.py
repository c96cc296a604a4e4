"""Serialization of experiment reports and a worker pool for batches.

JSON floats are written with 17 significant digits, so identical configs give
byte-identical files apart from the ``wall_time`` field.
"""

import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

SCHEMA_VERSION = 1
THREADS_ENV = "DIXMIER_LAB_THREADS"


def _float(x):
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    text = format(x, ".17g")
    # Keep floats recognizable as floats after a round trip.
    return text if any(c in text for c in ".e") else text + ".0"


def _dump(obj, out, indent, level):
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if isinstance(obj, (bool, np.bool_)):
        out.write("true" if obj else "false")
    elif obj is None:
        out.write("null")
    elif isinstance(obj, (int, np.integer)):
        out.write(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.write(_float(float(obj)))
    elif isinstance(obj, complex):
        _dump({"re": obj.real, "im": obj.imag}, out, indent, level)
    elif isinstance(obj, str):
        out.write(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        if not obj:
            out.write("{}")
            return
        out.write("{")
        for i, (k, v) in enumerate(obj.items()):
            out.write(("," if i else "") + pad + json.dumps(str(k), ensure_ascii=False) + ": ")
            _dump(v, out, indent, level + 1)
        out.write(end + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            out.write("[]")
            return
        out.write("[")
        for i, v in enumerate(obj):
            out.write(("," if i else "") + pad)
            _dump(v, out, indent, level + 1)
        out.write(end + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent=2):
    """JSON text with every float at 17 significant digits."""
    buf = io.StringIO()
    _dump(obj, buf, indent, 0)
    return buf.getvalue() + "\n"


def report_dict(report):
    return {
        "id": report.id,
        "config": report.config,
        "outputs": report.outputs,
        "pass": report.passed,
        "checks": report.checks,
        "cases": report.cases,
        "version": report.version,
        "schema": SCHEMA_VERSION,
        "wall_time": report.wall_time,
    }


def to_json(report):
    return dumps(report_dict(report))


def reports_to_json(reports):
    return dumps([report_dict(r) for r in reports])


def spectrum_csv(values):
    """CSV with header ``n,s_n``."""
    lines = ["n,s_n"]
    lines += [f"{n},{format(float(s), '.17g')}" for n, s in enumerate(np.asarray(values))]
    return "\n".join(lines) + "\n"


def to_csv(report):
    if report.spectrum is None:
        raise ValueError(f"experiment {report.id!r} produces no spectrum to dump")
    return spectrum_csv(report.spectrum)


def thread_cap(env=None):
    """Worker count: DIXMIER_LAB_THREADS if set, else the CPU count."""
    env = os.environ if env is None else env
    raw = env.get(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def _run(args):
    from .experiments import run_experiment

    return run_experiment(*args)


def run_many(jobs, workers=None):
    """Run (id, config) pairs in a process pool; results come back in job order."""
    jobs = list(jobs)
    workers = min(len(jobs), workers or thread_cap()) if jobs else 1
    if workers <= 1:
        return [_run(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run, jobs))
