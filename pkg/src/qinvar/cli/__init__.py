"""Workspace documents, task dispatch and reports."""

from .document import SCHEMA, SCHEMA_VERSION, WorkspaceDoc, dump_document, parse_document
from .main import EXIT_INTERNAL, EXIT_OK, EXIT_PARSE, EXIT_TASK, build_parser, main
from .report import Report, render, render_csv, render_json, render_markdown, run
from .tasks import Options, Section

__all__ = [
    "SCHEMA", "SCHEMA_VERSION", "WorkspaceDoc", "dump_document", "parse_document",
    "EXIT_INTERNAL", "EXIT_OK", "EXIT_PARSE", "EXIT_TASK", "build_parser", "main",
    "Report", "render", "render_csv", "render_json", "render_markdown", "run",
    "Options", "Section",
]
