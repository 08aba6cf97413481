"""Command-line front end: problem files, presets and the ``greensfn`` commands."""
