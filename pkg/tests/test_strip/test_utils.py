# tests/test_strip/test_utils.py
"""
Test table formatting and output helpers
"""
import json

import numpy as np

class TestFormatTable:
    """Test CSV and JSON rendering"""

    def test_csv_precision(self):
        """Test the header row and 17 significant digits"""
        from painleve_strip.utils import RunUtils

        content = RunUtils.format_table([{"theta": 0.1, "method": "series"}])
        assert content == "theta,method\n0.10000000000000001,series\n"

    def test_csv_deterministic(self):
        """Test that identical records render identically"""
        from painleve_strip.utils import RunUtils

        rows = [{"t": float(t), "g": float(np.exp(t))} for t in np.linspace(-1, 1, 5)]
        assert RunUtils.format_table(rows) == RunUtils.format_table(list(rows))

    def test_json_payload(self):
        """Test schema version, metadata and records"""
        from painleve_strip.utils import RunUtils

        rows = [{"name": "G1", "value": np.float64(0.5), "passed": True}]
        content = RunUtils.format_table(rows, fmt="json", schema_version="1.0",
                                        meta={"nu": np.float64(0.25), "methods": ("series",)})
        payload = json.loads(content)
        assert payload["schema_version"] == "1.0"
        assert payload["meta"] == {"nu": 0.25, "methods": ["series"]}
        assert payload["records"] == [{"name": "G1", "value": 0.5, "passed": True}]

class TestHelpers:
    """Test small helpers"""

    def test_to_builtin(self):
        """Test conversion of numpy values"""
        from painleve_strip.utils import RunUtils

        value = RunUtils.to_builtin({"a": np.arange(3), "b": np.int64(4)})
        assert value == {"a": [0, 1, 2], "b": 4}
        assert type(value["b"]) is int

    def test_write_output(self, tmp_path, capsys):
        """Test writing to a file and to stdout"""
        from painleve_strip.utils import RunUtils

        path = tmp_path / "table.csv"
        RunUtils.write_output("a,b\n1,2\n", str(path))
        assert path.read_text() == "a,b\n1,2\n"

        RunUtils.write_output("a,b\n1,2\n", None)
        assert capsys.readouterr().out == "a,b\n1,2\n"

    def test_ensure_directory(self, tmp_path):
        """Test nested directory creation"""
        from painleve_strip.utils import RunUtils

        target = tmp_path / "runs" / "eta"
        assert RunUtils.ensure_directory(str(target)) == str(target)
        assert target.is_dir()
