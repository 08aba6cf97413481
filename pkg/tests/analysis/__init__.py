# tests/analysis/__init__.py