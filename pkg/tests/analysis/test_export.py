"""Tests for atomic CSV/JSON export."""
import json
import os

import numpy as np
import pytest

from greensfn.analysis import write_atomic, write_csv, write_json, write_matrix_csv
from greensfn.analysis.export import csv_text, solution_header, solution_rows


def test_write_atomic_creates_directories(tmp_path):
    """Test nested output directories and no leftover temporary files."""
    path = write_atomic(str(tmp_path / "a" / "b" / "out.txt"), "hello\n")
    assert open(path, encoding="utf-8").read() == "hello\n"
    assert os.listdir(tmp_path / "a" / "b") == ["out.txt"]


def test_write_atomic_replaces_existing(tmp_path):
    """Test that a second write replaces the content."""
    target = str(tmp_path / "out.txt")
    write_atomic(target, "first")
    write_atomic(target, "second")
    assert open(target, encoding="utf-8").read() == "second"


def test_csv_text_full_precision():
    """Test 17 significant digits and one row per sample."""
    text = csv_text(["t", "x_1"], np.array([[0.0, 1.0 / 3.0], [0.5, 2.0]]))
    lines = text.splitlines()
    assert lines[0] == "t,x_1"
    assert lines[1] == "0,0.33333333333333331"
    assert float(lines[1].split(",")[1]) == 1.0 / 3.0
    assert len(lines) == 3


def test_write_csv_and_json(tmp_path):
    """Test the CSV and JSON writers."""
    csv_path = write_csv(str(tmp_path / "x.csv"), ["a"], np.array([[1.0], [2.0]]))
    assert open(csv_path, encoding="utf-8").read() == "a\n1\n2\n"
    json_path = write_json(str(tmp_path / "r.json"), {"b": 2, "a": 1.5})
    assert json.load(open(json_path, encoding="utf-8")) == {"a": 1.5, "b": 2}


def test_write_matrix_csv(tmp_path):
    """Test the header row holds the column nodes."""
    nodes = np.array([0.0, 0.5, 1.0])
    path = write_matrix_csv(str(tmp_path / "m.csv"), nodes, np.eye(3))
    lines = open(path, encoding="utf-8").read().splitlines()
    assert lines[0] == "0,0.5,1"
    assert lines[2] == "0,1,0"


@pytest.mark.parametrize("dim", [1, 3])
def test_solution_layout(dim):
    """Test the t, x, dx, w column layout."""
    t = np.linspace(0.0, 1.0, 5)
    x = np.ones((5, dim))
    rows = solution_rows(t, x, 2 * x, 3 * x)
    header = solution_header(dim)
    assert rows.shape == (5, 1 + 3 * dim)
    assert len(header) == rows.shape[1]
    assert header[0] == "t"
    assert header[-1] == f"w_{dim}"
    np.testing.assert_array_equal(rows[:, -1], 3.0)
