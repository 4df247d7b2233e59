"""Command-line tools, instance files, generator and reports."""
