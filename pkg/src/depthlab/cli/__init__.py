"""Session language, example registry and command-line interface."""
from .commands import Report, emit_report, run_command
from .dsl import FieldSpec, SessionScript, format_script, parse_script
from .registry import example_registry
from .session import Session

__all__ = ["parse_script", "format_script", "SessionScript", "FieldSpec", "example_registry",
           "Session", "run_command", "emit_report", "Report"]
