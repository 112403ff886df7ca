"""Reports printed by the command line, as JSON or as plain text."""

import json

from src.core.constants import MODE_LTL

TIMING_KEY = "timing_ms"


def verdict_label(mode, nonempty):
    if mode == MODE_LTL:
        return "sat" if nonempty else "unsat"
    return "nonempty" if nonempty else "empty"


def recipe_to_json(recipe):
    names = recipe.extended.alphabet.name
    return {
        "partition": recipe.partition.describe(recipe.extended.base),
        "u": [names(a) for a in recipe.u],
        "v_prefix": [names(a) for a in recipe.v_prefix],
        "v_cycle": [names(a) for a in recipe.v_cycle],
        "class_counts": list(recipe.class_counts),
        "locally_different": recipe.locally_different,
    }


def build_report(mode, verdict, recipe=None, prefix=None, checks=None, extra=None, timing_ms=None):
    report = {
        "mode": mode,
        "verdict": verdict_label(mode, verdict.nonempty),
        "stats": verdict.stats,
    }
    if recipe is not None:
        report["recipe"] = recipe
    if prefix is not None:
        report["prefix"] = prefix
    if checks is not None:
        report["checks"] = checks
    if extra:
        report.update(extra)
    if timing_ms is not None:
        report[TIMING_KEY] = round(timing_ms, 3)
    return report


def error_report(message, pointer=None):
    report = {"verdict": "error", "error": message}
    if pointer is not None:
        report["pointer"] = pointer
    return report


def without_timing(report):
    return {key: value for key, value in report.items() if key != TIMING_KEY}


def render_json(report):
    return json.dumps(report, indent=2, sort_keys=True, default=str)


def render_text(report):
    lines = [f"verdict: {report['verdict']}"]
    if "error" in report:
        where = f" at {report['pointer']}" if report.get("pointer") else ""
        lines.append(f"error{where}: {report['error']}")
        return "\n".join(lines)
    if "mode" in report:
        lines.append(f"mode: {report['mode']}")
    for key, value in sorted(report.get("stats", {}).items()):
        lines.append(f"  {key}: {value}")
    recipe = report.get("recipe")
    if recipe:
        lines.append(f"partition: {recipe['partition']}")
        lines.append(f"u: {' '.join(recipe['u']) or '-'}")
        lines.append(f"v: {' '.join(recipe['v_prefix'] + recipe['v_cycle'])}")
    if "prefix" in report:
        rendered = " ".join(f"({a},{'-' if v is None else v})" for a, v in _pairs(report["prefix"]))
        lines.append(f"prefix: {rendered}")
    checks = report.get("checks")
    if checks:
        for check in checks.get("checks", []):
            lines.append(f"  [{check['status']}] {check['name']} {check.get('detail', '')}".rstrip())
    for key in ("formula", "word", "counts"):
        if key in report:
            lines.append(f"{key}: {report[key]}")
    if TIMING_KEY in report:
        lines.append(f"time: {report[TIMING_KEY]} ms")
    return "\n".join(lines)


def _pairs(prefix):
    if isinstance(prefix, dict):
        return [tuple(item) for item in prefix.get("prefix", []) + prefix.get("cycle", [])]
    return [tuple(item) for item in prefix]
