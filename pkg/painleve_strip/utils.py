import io
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

class RunUtils:
    """Utility functions for runs and their output tables"""

    @staticmethod
    def setup_logging(log_level: str = 'INFO', log_file: Optional[str] = None,
                      log_format: Optional[str] = None):
        """Setup logging configuration"""
        log_format = log_format or '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

        if log_file:
            logging.basicConfig(
                level=getattr(logging, log_level.upper()),
                format=log_format,
                handlers=[
                    logging.FileHandler(log_file),
                    logging.StreamHandler()
                ]
            )
        else:
            logging.basicConfig(
                level=getattr(logging, log_level.upper()),
                format=log_format
            )

    @staticmethod
    def ensure_directory(path: str) -> str:
        """Ensure directory exists and return path"""
        Path(path).mkdir(parents=True, exist_ok=True)
        return path

    @staticmethod
    def to_builtin(value: Any) -> Any:
        """Convert numpy scalars and arrays to plain Python values"""
        if isinstance(value, np.generic):
            return value.item()
        if isinstance(value, np.ndarray):
            return value.tolist()
        if isinstance(value, dict):
            return {k: RunUtils.to_builtin(v) for k, v in value.items()}
        if isinstance(value, (list, tuple)):
            return [RunUtils.to_builtin(v) for v in value]
        return value

    @staticmethod
    def format_table(rows: List[Dict[str, Any]], fmt: str = "csv", precision: int = 17,
                     schema_version: str = "1.0", meta: Optional[Dict[str, Any]] = None) -> str:
        """Render records as CSV (header row, fixed significant digits) or JSON"""
        frame = pd.DataFrame.from_records(rows)
        if fmt == "json":
            payload = {
                "schema_version": schema_version,
                "meta": RunUtils.to_builtin(meta or {}),
                "records": RunUtils.to_builtin(frame.to_dict(orient="records")),
            }
            return json.dumps(payload, indent=2, sort_keys=True)

        buffer = io.StringIO()
        frame.to_csv(buffer, index=False, float_format=f"%.{precision}g", lineterminator="\n")
        return buffer.getvalue()

    @staticmethod
    def write_output(content: str, output_path: Optional[str]):
        """Write output to file or stdout"""
        if output_path:
            with open(output_path, 'w') as f:
                f.write(content)
        else:
            print(content, end="" if content.endswith("\n") else "\n")
