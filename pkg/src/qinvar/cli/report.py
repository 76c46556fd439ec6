"""Report assembly and rendering (markdown, JSON, CSV); output is byte-deterministic."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .document import WorkspaceDoc
from .tasks import Options, Section, run_task

REPORT_VERSION = "qinvar-report/1"


@dataclass
class Report:
    title: str
    options: Options
    sections: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        if any(s.internal for s in self.sections):
            return 3
        if any(s.status == "error" or s.failed_assertion for s in self.sections):
            return 1
        return 0

    def to_dict(self) -> dict:
        return {
            "report": REPORT_VERSION,
            "title": self.title,
            "options": {
                "check_oracle": self.options.check_oracle,
                "max_degree": self.options.max_degree,
                "group_cap": self.options.group_cap,
                "seed": self.options.seed,
            },
            "tasks": [_section_dict(s) for s in self.sections],
            "exit_code": self.exit_code,
        }


def _section_dict(s: Section) -> dict:
    d = {"index": s.index + 1, "op": s.op, "status": s.status, "inputs": s.inputs, "results": s.results}
    if s.error:
        d["error"] = s.error
    if s.citations:
        d["citations"] = s.citations
    if s.flags:
        d["flags"] = s.flags
    return d


def run(doc: WorkspaceDoc, options: Options | None = None) -> Report:
    """Execute every task of the workspace in order."""
    options = options or Options()
    report = Report(doc.data.get("title", ""), options)
    for k, task in enumerate(doc.tasks):
        report.sections.append(run_task(doc, k, task, options))
    return report


def render_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n"


def _md_value(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        if v and isinstance(v[0], dict):
            return "; ".join(", ".join(f"{k}: {x}" for k, x in item.items()) for item in v)
        return "[" + ", ".join(str(x) for x in v) + "]"
    if isinstance(v, dict):
        return ", ".join(f"{k}: {_md_value(x)}" for k, x in v.items())
    return f"`{v}`" if isinstance(v, str) and v and not v.isalpha() else str(v)


def render_markdown(report: Report) -> str:
    lines = [f"# {report.title or 'qinvar report'}", ""]
    if not report.sections:
        lines += ["No tasks.", ""]
    for s in report.sections:
        lines.append(f"## Task {s.index + 1}: {s.op}")
        lines.append("")
        lines.append(f"Status: **{s.status}**")
        lines.append("")
        if s.inputs:
            lines.append("Inputs:")
            lines.append("")
            for k, v in s.inputs.items():
                lines.append(f"- {k}: {_md_value(v)}")
            lines.append("")
        if s.error:
            lines += [f"Error: {s.error}", ""]
        if s.results:
            lines.append("Results:")
            lines.append("")
            for k, v in s.results.items():
                if isinstance(v, list) and v and isinstance(v[0], dict):
                    lines.append(f"- {k}:")
                    for item in v:
                        lines.append("  - " + ", ".join(f"{a}: `{b}`" for a, b in item.items()))
                else:
                    lines.append(f"- {k}: {_md_value(v)}")
            lines.append("")
        if s.citations:
            lines.append("Justification:")
            lines.append("")
            for c in s.citations:
                lines.append(f"- {c}")
            lines.append("")
        if s.flags:
            lines.append("Flags:")
            lines.append("")
            for f in s.flags:
                lines.append(f"- [{f['kind']}] {f['message']}")
            lines.append("")
    lines.append(f"Exit code: {report.exit_code}")
    return "\n".join(lines) + "\n"


def _csv_rows(prefix: str, value):
    if isinstance(value, dict):
        for k, v in value.items():
            yield from _csv_rows(f"{prefix}.{k}" if prefix else k, v)
    elif isinstance(value, list) and value and isinstance(value[0], dict):
        for i, item in enumerate(value):
            yield from _csv_rows(f"{prefix}[{i}]", item)
    elif isinstance(value, list):
        yield prefix, " ".join(str(x) for x in value)
    else:
        yield prefix, "yes" if value is True else "no" if value is False else str(value)


def render_csv(report: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["task", "op", "status", "key", "value"])
    for s in report.sections:
        rows = list(_csv_rows("", {"inputs": s.inputs, "results": s.results}))
        if s.error:
            rows.append(("error", s.error))
        for i, c in enumerate(s.citations):
            rows.append((f"citation[{i}]", c))
        for i, f in enumerate(s.flags):
            rows.append((f"flag[{i}].{f['kind']}", f["message"]))
        for key, value in rows:
            w.writerow([s.index + 1, s.op, s.status, key, value])
    return buf.getvalue()


RENDERERS = {"md": render_markdown, "json": render_json, "csv": render_csv}


def render(report: Report, fmt: str = "md") -> str:
    return RENDERERS[fmt](report)
