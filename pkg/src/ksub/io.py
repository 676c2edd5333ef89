"""Instance and report file formats.

Instance JSON:

    {
      "k": 2,
      "items": [{"id": 1, "cost": 1}, {"id": 2, "cost": 2}],
      "budget": 3,
      "oracle": {"type": "coverage" | "separable_sum" | "tabular", ...}
    }

Item ids must be dense 1..n. Tabular oracle payloads key their values by
base-(k+1) digit strings of length n with item 1 leftmost (digit 0 means
unassigned). Report CSV columns: instance, algorithm, n, k, budget, value,
optimum, ratio, evaluations, millis. The ratio and millis cells are empty
when undefined; bench output leaves millis empty so repeated runs are
byte-identical.
"""

from __future__ import annotations

import csv
import io as _io
import json
from typing import Optional

from ksub.core import Instance, MalformedInputError, SolveReport
from ksub.oracles import Oracle, oracle_from_json

CSV_COLUMNS = [
    "instance",
    "algorithm",
    "n",
    "k",
    "budget",
    "value",
    "optimum",
    "ratio",
    "evaluations",
    "millis",
]


def instance_to_json(inst: Instance, oracle: Oracle) -> dict:
    return {
        "k": inst.k,
        "items": [{"id": a, "cost": inst.costs[a]} for a in range(1, inst.n + 1)],
        "budget": inst.budget,
        "oracle": oracle.to_json(),
    }


def instance_from_json(obj: dict) -> tuple[Instance, Oracle]:
    if not isinstance(obj, dict):
        raise MalformedInputError("instance document must be a JSON object")
    try:
        k = obj["k"]
        items = obj["items"]
        budget = obj["budget"]
        oracle_obj = obj["oracle"]
    except (KeyError, TypeError) as exc:
        raise MalformedInputError(f"missing instance field: {exc}") from exc
    costs = {}
    for it in items:
        try:
            costs[int(it["id"])] = it["cost"]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInputError(f"bad item entry {it!r}") from exc
    n = len(costs)
    inst = Instance(n, k, costs, budget)
    oracle = oracle_from_json(n, k, oracle_obj)
    return inst, oracle


def save_instance(path: str, inst: Instance, oracle: Oracle) -> None:
    with open(path, "w") as fh:
        json.dump(instance_to_json(inst, oracle), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_instance(path: str) -> tuple[Instance, Oracle]:
    with open(path) as fh:
        obj = json.load(fh)
    return instance_from_json(obj)


def report_row(
    instance_label: str,
    inst: Instance,
    report: SolveReport,
    millis: Optional[float] = None,
) -> dict:
    return {
        "instance": instance_label,
        "algorithm": report.algorithm,
        "n": inst.n,
        "k": inst.k,
        "budget": inst.budget,
        "value": repr(report.value),
        "optimum": "" if report.optimum is None else repr(report.optimum),
        "ratio": "" if report.ratio is None else repr(report.ratio),
        "evaluations": report.evaluations,
        "millis": "" if millis is None else repr(millis),
    }


def write_csv(rows: list[dict], trailer_comments: list[str] | None = None) -> str:
    """Render report rows as CSV text ('.' decimals, no locale, no timestamps)."""
    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    for line in trailer_comments or []:
        buf.write(f"# {line}\n")
    return buf.getvalue()
