"""Report rendering and file export."""
from .export import write_atomic, write_csv, write_json, write_matrix_csv
from .report_generation import format_number, render_json, to_plain

__all__ = [
    'format_number',
    'render_json',
    'to_plain',
    'write_atomic',
    'write_csv',
    'write_json',
    'write_matrix_csv',
]
