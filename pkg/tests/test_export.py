import json
from datetime import datetime

import numpy as np
import pandas as pd

import component.scripts as scripts


def test_csv_has_a_units_line(tmp_path):

    df = pd.DataFrame({"omega": [7.5, 7.75], "m": [1, 2]})
    path = scripts.write_csv(df, tmp_path / "sub" / "modes.csv", {"omega": "GHz"})

    lines = path.read_text().splitlines()

    assert lines[0] == "# units: omega [GHz], m [1]"
    assert lines[1] == "omega,m"
    assert lines[2] == "7.500000000000e+00,1"

    back = pd.read_csv(path, comment="#")
    pd.testing.assert_frame_equal(back, df)


def test_csv_is_byte_identical(tmp_path):

    df = pd.DataFrame({"x": np.linspace(0, 1, 7) / 3})

    first = scripts.write_csv(df, tmp_path / "a.csv", {}).read_bytes()
    second = scripts.write_csv(df, tmp_path / "b.csv", {}).read_bytes()

    assert first == second


def test_manifest(tmp_path):

    results = {"gap": np.float64(0.2), "modes": np.arange(3), "folder": tmp_path}
    scripts.write_manifest(
        tmp_path / "manifest.json", "spectrum", {"device": {"N": 8}}, results, ["w"]
    )

    manifest = json.loads((tmp_path / "manifest.json").read_text())

    assert manifest["scenario"] == "spectrum"
    assert manifest["parameters"] == {"device": {"N": 8}}
    assert manifest["results"]["gap"] == 0.2
    assert manifest["results"]["modes"] == [0, 1, 2]
    assert manifest["results"]["folder"] == str(tmp_path)
    assert manifest["warnings"] == ["w"]

    timestamp = datetime.fromisoformat(manifest["timestamp"])
    assert timestamp.utcoffset().total_seconds() == 0


def test_summary(tmp_path):

    path = scripts.write_summary(tmp_path / "summary.txt", ["a", "b"])

    assert path.read_text() == "a\nb\n"
