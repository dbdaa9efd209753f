"""CSV logs, metrics and evaluation reports."""
