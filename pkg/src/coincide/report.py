"""Deterministic report emission (text and JSON) for batch verdicts.

JSON reports round-trip: ``verdict_from_dict(verdict_to_dict(v)) == v``.
Text reports print one block per query, every decided line naming the rule
that decided it.
"""
from __future__ import annotations

import json

from .engine import STATEMENTS, QueryFailure, TraceStep, Verdict
from .trilogic import Tri

__all__ = [
    "verdict_to_dict",
    "verdict_from_dict",
    "render_json",
    "render_text",
    "parse_report_json",
]

REPORT_VERSION = "1"


def _nielsen_to_json(value):
    if value is None:
        return None
    if isinstance(value, int):
        return value
    return {"one_of": sorted(value)}


def _nielsen_from_json(obj):
    if obj is None or isinstance(obj, int):
        return obj
    return frozenset(obj["one_of"])


def verdict_to_dict(verdict: Verdict, include_trace: bool = True) -> dict:
    out = {
        "subject": verdict.subject,
        "statements": {
            key: verdict.statements[key].value for key in STATEMENTS
        },
        "nielsen_sharp": _nielsen_to_json(verdict.nielsen_sharp),
        "nielsen_stable": _nielsen_to_json(verdict.nielsen_stable),
        "exists_witness": (
            {key: verdict.exists_witness[key].value for key in STATEMENTS}
            if verdict.exists_witness is not None
            else None
        ),
        "notes": list(verdict.notes),
        "trace": [
            {
                "rule": step.rule,
                "cite": step.cite,
                "law": step.law,
                "premises": list(step.premises),
                "conclusion": step.conclusion,
            }
            for step in verdict.trace
        ]
        if include_trace
        else [],
    }
    return out


def verdict_from_dict(obj: dict) -> Verdict:
    return Verdict(
        subject=obj["subject"],
        statements={key: Tri(value) for key, value in obj["statements"].items()},
        nielsen_sharp=_nielsen_from_json(obj["nielsen_sharp"]),
        nielsen_stable=_nielsen_from_json(obj["nielsen_stable"]),
        exists_witness=(
            {key: Tri(value) for key, value in obj["exists_witness"].items()}
            if obj["exists_witness"] is not None
            else None
        ),
        notes=tuple(obj["notes"]),
        trace=tuple(
            TraceStep(
                rule=step["rule"],
                cite=step["cite"],
                law=step["law"],
                premises=tuple(step["premises"]),
                conclusion=step["conclusion"],
            )
            for step in obj["trace"]
        ),
    )


def _result_to_dict(result, include_trace: bool) -> dict:
    if isinstance(result, QueryFailure):
        return {"error": {"kind": result.kind, "message": result.message}}
    return verdict_to_dict(result, include_trace)


def render_json(results, include_trace: bool = False) -> str:
    doc = {
        "version": REPORT_VERSION,
        "reports": [_result_to_dict(r, include_trace) for r in results],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_report_json(text: str) -> list:
    doc = json.loads(text)
    out = []
    for item in doc["reports"]:
        if "error" in item:
            out.append(QueryFailure(item["error"]["kind"], item["error"]["message"]))
        else:
            out.append(verdict_from_dict(item))
    return out


def _nielsen_text(value) -> str:
    if value is None:
        return "undetermined"
    if isinstance(value, int):
        return str(value)
    return "one of {" + ", ".join(str(v) for v in sorted(value)) + "}"


def _statement_lines(statements: dict[str, Tri], decided_by: dict[str, str]) -> list[str]:
    lines = []
    for key, label in STATEMENTS.items():
        value = statements[key]
        suffix = ""
        if value.known and key in decided_by:
            suffix = f"   [{decided_by[key]}]"
        lines.append(f"  {key}  {label:<34} {value.value}{suffix}")
    return lines


def render_text(results, include_trace: bool = False) -> str:
    lines: list[str] = []
    lines.append(f"coincidence verdict report (version {REPORT_VERSION})")
    for index, result in enumerate(results, start=1):
        lines.append("")
        if isinstance(result, QueryFailure):
            lines.append(f"== query {index}: ERROR ({result.kind})")
            for part in result.message.splitlines():
                lines.append(f"  {part}")
            continue
        lines.append(f"== query {index}: {result.subject}")
        decided_by: dict[str, str] = {}
        decided_reason: dict[str, str] = {}
        for step in result.trace:
            for key in STATEMENTS:
                if step.conclusion.startswith(f"{key} = ") and key not in decided_by:
                    decided_by[key] = step.rule
                    decided_reason[key] = step.law
        lines.extend(_statement_lines(result.statements, decided_by))
        lines.append(f"  nielsen#  {_nielsen_text(result.nielsen_sharp)}")
        lines.append(f"  nielsen~  {_nielsen_text(result.nielsen_stable)}")
        if result.exists_witness is not None:
            decided = {
                key: value.value
                for key, value in result.exists_witness.items()
                if value.known
            }
            witness = ", ".join(f"{k} = {v}" for k, v in sorted(decided.items()))
            lines.append(f"  exists a class with: {witness}")
        for note in result.notes:
            lines.append(f"  note: {note}")
        seen_rules: set[str] = set()
        for key in STATEMENTS:
            if key in decided_by and decided_by[key] not in seen_rules:
                seen_rules.add(decided_by[key])
                lines.append(f"  by [{decided_by[key]}]: {decided_reason[key]}")
        if include_trace:
            lines.append("  trace:")
            for i, step in enumerate(result.trace, start=1):
                lines.append(f"    {i:>2}. [{step.rule}] ({step.cite})")
                lines.append(f"        law: {step.law}")
                for premise in step.premises:
                    lines.append(f"        premise: {premise}")
                lines.append(f"        conclusion: {step.conclusion}")
    lines.append("")
    return "\n".join(lines)
